"""Tool protocol, reference agents, suite runner, optional external adapter."""

from .agents import (
    FabricatorAgent,
    GreedyKeywordAgent,
    OracleAgent,
    SycophantAgent,
    TruncatingAgent,
    reference_agents,
)
from .protocol import Agent, BudgetExhausted, Episode
from .runner import (
    DEFAULT_BUDGET,
    RunConfig,
    RunRecord,
    generate_tasks,
    run_suite,
    run_task,
    selfcheck,
)
