"""Deletion-robust streaming submodular maximization under p-matroid constraints."""

__version__ = "0.1.0"

from .adversary import AdversaryModel, make_deletion_set
from .errors import (CoresetError, CoresetSizeError, ExchangeStructureError, GuardLimitError,
                     InstanceFormatError, InstanceValidationError, UnknownItemError)
from .exchange import ExchangeState, c_alpha, exc_run, exc_step, exchange_candidates
from .harness import TrialConfig, TrialRecord, emit_report, run_experiment, run_trial
from .instance import (GeneratorConfig, Instance, Item, emit_instance, generate_synthetic, load_instance,
                       validate_instance)
from .matroid import GraphicMatroid, PartitionMatroid, PMatroid, UniformMatroid, build_pmatroid
from .reference import brute_force_opt, greedy, nonrobust_baseline
from .robust import (Buffer, DeletionSet, InjectedDraws, RexcOutcome, SeededDraws, buffer_filter,
                     buffer_sample, coreset, rebuild_after_deletion, rexc_ingest, rexc_run)
from .submodular import CoverageOracle, FacilityOracle, ModularOracle, UtilityOracle, build_oracle
