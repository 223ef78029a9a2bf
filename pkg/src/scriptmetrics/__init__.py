"""Quantitative analysis of writing systems: letter complexity and
distinctivity, grapheme-phoneme statistics, and discrete distribution fits."""

__version__ = "0.1.0"

from .complexity import complexity_distribution, complexity_stats, letter_complexity, runs_test_uniform
from .distinctivity import (
    DifferenceWeightTable,
    DistanceMatrix,
    component_difference,
    distance_matrix,
    letter_distance,
    mean_distinctivities,
)
from .distributions import (
    PoissonParams,
    SSGeometricParams,
    chi_square_statistic,
    evaluate_fit,
    fit_discrete,
    poisson_pmf,
    pool_open_tail,
    ss_geometric_mean,
    ss_geometric_pmf,
)
from .formats import (
    load_bundle,
    parse_alphabet_file,
    parse_mapping_file,
    parse_matrix_file,
)
from .model import (
    Alphabet,
    Component,
    ComponentKind,
    ConnectionKind,
    DataError,
    FrequencyTable,
    Letter,
    MappingTable,
    representation_histogram,
    table_moments,
    validate_alphabet,
)
from .special import chi_square_sf
from .uncertainty import compare_uncertainty, comparison_table, mean_uncertainty
