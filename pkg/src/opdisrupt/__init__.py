"""Opinion-dynamics network disruption: equilibria, adversarial takeovers,
bound audits, synthetic instances, and experiment sweeps."""

__version__ = "0.1.0"

from .adversary import (
    DisruptionPlan,
    Heuristic,
    brute_force_optimal,
    greedy,
    max_degree,
    mean_opinion,
    random_heuristic,
    run_heuristic,
)
from .analysis import (
    BoundReport,
    audit_plan,
    check_disagreement_bound,
    check_l1_shift,
    check_polarization_bound,
)
from .dynamics import (
    InfluenceMatrix,
    apply_single_change,
    as_opinions,
    equilibrium,
    influence,
    iterate_dynamics,
)
from .generators import (
    RNG_NAME,
    GeneratorConfig,
    erdos_renyi,
    generate,
    make_rng,
    opinions_beta_communities,
    opinions_uniform,
    preferential_attachment,
    stochastic_block,
)
from .graph import (
    DegreeProfile,
    WeightedGraph,
    build_graph,
    degrees,
    laplacian,
    remove_isolated,
)
from .objectives import (
    Objective,
    ObjectiveSpec,
    disagreement,
    objective_of_innate,
    polarization,
    weighted_sum,
)

__all__ = [
    "__version__",
    "RNG_NAME",
    "WeightedGraph",
    "DegreeProfile",
    "build_graph",
    "laplacian",
    "degrees",
    "remove_isolated",
    "as_opinions",
    "InfluenceMatrix",
    "influence",
    "equilibrium",
    "iterate_dynamics",
    "apply_single_change",
    "Objective",
    "ObjectiveSpec",
    "disagreement",
    "polarization",
    "weighted_sum",
    "objective_of_innate",
    "Heuristic",
    "DisruptionPlan",
    "greedy",
    "mean_opinion",
    "max_degree",
    "random_heuristic",
    "brute_force_optimal",
    "run_heuristic",
    "BoundReport",
    "check_polarization_bound",
    "check_disagreement_bound",
    "check_l1_shift",
    "audit_plan",
    "GeneratorConfig",
    "generate",
    "make_rng",
    "erdos_renyi",
    "preferential_attachment",
    "stochastic_block",
    "opinions_uniform",
    "opinions_beta_communities",
]
