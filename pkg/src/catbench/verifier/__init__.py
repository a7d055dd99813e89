"""Trace auditing against the functorial contracts."""

from .checks import (
    ColimitMismatch,
    CompositionViolation,
    Hallucination,
    MonotonicityViolation,
    TransitivityViolation,
    Verdict,
    check_groundedness,
    check_report_colimit,
    check_search_compositionality,
    check_search_monotonicity,
    check_transitivity,
    claim_entailment_category,
    render_verdict,
    verdict_to_json,
    verify,
)
from .trace import (
    ChainDecl,
    Claim,
    ReportStep,
    Retrieval,
    Trace,
    trace_from_json,
    trace_to_json,
)
