"""Polynomial multiproofs for sampled retrieval of erasure-coded data.

The package layers, bottom up: BLS12-381 arithmetic (`fields`, `curve`),
scalar-field polynomials (`field_poly`), KZG commitments (`kzg`),
shared-point aggregated openings (`multiproof`), the erasure-coded grid
(`grid`), wire formats and storage accounting (`wire`), the simulated
sampling workflow (`dasnet`), and the CLI (`cli`).
"""

from .curve import CurveError, G1Point, G2Point, g1_msm, g2_msm, pairing_check
from .field_poly import (
    SCALAR_MODULUS, EvaluationDomain, FieldPolyError, MicroDomain,
    NonCanonicalScalar, Polynomial, div_rem, evaluate_on_domain, interpolate,
    roots_of_unity_domain, scalar_from_bytes, scalar_to_bytes, vanishing_poly,
)
from .kzg import (
    SRS, Commitment, KzgError, OpCounters, OpeningProof, commit, derive_rho,
    gen, open_single, verify_batch_independent, verify_single,
)
from .multiproof import (
    AggregatedProof, MultiproofError, OpenedGroup, Transcript, derive_gamma,
    open_generic, open_shared, verify_shared,
)
from .grid import (
    Coordinate, DataGrid, GridDims, GridError, build_grid, build_opened_group,
    coordinate_to_group, default_row_domain, iter_groups,
    partition_micro_domains,
)
from .wire import (
    BaselineCell, CountMismatch, GCellBlock, MCell, NonCanonicalScalarEncoding,
    StorageReport, TruncatedInput, WireError, storage_report,
)
from .dasnet import (
    BlockContext, ConfigMode, DasNetError, ExperimentConfig,
    ExperimentSession, RetrievalOutcome, SamplingPlan, SimDht, Status,
    build_objects, effective_samples, make_sampling_plan, publish,
    required_samples, run_experiment, sample_and_verify,
)

__version__ = "0.1.0"
