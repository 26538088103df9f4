"""barrierscape: exact 1D transmission through piecewise-constant barriers,
analytic transmission-landscape gradients, and gradient-ascent experiments."""

from .potential import (
    PotentialError,
    PotentialSpec,
    read_spec,
    refine,
    sample_random,
    validate,
    write_spec,
)
from .scattering import (
    EnergyError,
    EvanescentOverflowError,
    Monodromy,
    ScatteringAmplitudes,
    WaveField,
    compose,
    identity_monodromy,
    slab_monodromy,
    solve,
    transmission,
    wavefields,
)
from .kinematic import (
    KinematicPoint,
    decompose,
    kinematic_T,
    kinematic_scan,
    radial_derivative,
    reconstruct,
)
from .gradient import (
    CriticalityReport,
    GradientKernel,
    analytic_gradient,
    criticality_test,
    fd_gradient,
)

__version__ = "0.1.0"

__all__ = [
    "PotentialError",
    "PotentialSpec",
    "read_spec",
    "refine",
    "sample_random",
    "validate",
    "write_spec",
    "EnergyError",
    "EvanescentOverflowError",
    "Monodromy",
    "ScatteringAmplitudes",
    "WaveField",
    "compose",
    "identity_monodromy",
    "slab_monodromy",
    "solve",
    "transmission",
    "wavefields",
    "KinematicPoint",
    "decompose",
    "kinematic_T",
    "kinematic_scan",
    "radial_derivative",
    "reconstruct",
    "CriticalityReport",
    "GradientKernel",
    "analytic_gradient",
    "criticality_test",
    "fd_gradient",
    "__version__",
]
