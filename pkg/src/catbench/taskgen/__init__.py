"""Task paradigm generators with sealed, machine-certified ground truths."""

from .answers import (
    Answer,
    EntityRef,
    NullField,
    OrderedList,
    Refutation,
    Scalar,
    Stat,
    answer_from_json,
    answer_to_json,
)
from .certify import certify_uniqueness
from .generate import exact_stat, gen_task, ranking
from .model import (
    OracleClaim,
    OracleRetrieval,
    OracleScript,
    Task,
    UniquenessCert,
    task_from_json,
    task_public_json,
    task_sealed_json,
)
from .prompts import render_prompt
from .weights import axis_of_kind, kinds_of_axis, task_weights
