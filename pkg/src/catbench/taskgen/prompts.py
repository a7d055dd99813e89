"""Prompt templates.

Rendering is a pure function of the structured query, so re-rendering a
task always reproduces its prompt byte for byte.  Templates never mention
the sealed answer, thresholds, or which side of a designed gap is real.
"""

from __future__ import annotations


def _render_kind_1(q: dict) -> str:
    return (
        f"A document published somewhere in this corpus contains the passage: "
        f"\"{q['snippet']}\". How many contributions did the author of that "
        f"document log on {q['day']}? Answer the exact daily count."
    )


def _render_kind_2(q: dict) -> str:
    return (
        f"Exactly one fund's disclosure filings page shows nav {q['nav']} on "
        f"{q['nav_day']} and shares {q['shares']} on {q['shares_day']}. "
        f"Report that fund's advisor registry number."
    )


def _render_kind_3(q: dict) -> str:
    ranks = q["ranks"]
    rank_text = ", ".join(f"rank {ranks[m]} by {m}" for m in sorted(ranks))
    return (
        f"On {q['day']} exactly one fund held {rank_text} (1-based, daily "
        f"ranking tables). Which company employed that fund's manager on "
        f"{q['ask_day']}? Answer the company code."
    )


def _render_kind_4(q: dict) -> str:
    return (
        f"Let a be the nav on {q['day']} of the fund ranked {q['rank']} by "
        f"{q['metric']} that day (see the daily ranking tables and the fund's "
        f"disclosure filings). Report the exact value of a + {q['delta']}."
    )


def _render_kind_5(q: dict) -> str:
    return (
        f"Several profiles share the display name \"{q['name']}\". Report the "
        f"birth year of the person whose rigid code is {q['code']}; the code, "
        f"not the name, identifies the subject."
    )


def _render_kind_6(q: dict) -> str:
    return (
        f"Place a purchase order of {q['units']} units of fund {q['fund']} "
        f"dated {q['day']}. Confirm the order, or flag the applicable "
        f"restriction with the computed limit if it cannot proceed."
    )


def _render_kind_7(q: dict) -> str:
    return (
        f"A customer asks us to update their mailing address: surname "
        f"{q['surname']}, account reference ending {q['idfrag']}, region "
        f"{q['region']}. Process the request, or flag any registry concern "
        f"that applies."
    )


def _render_kind_8(q: dict) -> str:
    steps = "; ".join(
        f"on {day} we installed the newest {name} available" for day, _, name in q["installs"]
    )
    return (
        f"A project journal reads: \"{steps}; afterwards everything ran "
        f"together without issues.\" Assess whether that account is possible "
        f"given the published compatibility histories; if not, identify the "
        f"incompatible pair."
    )


def _render_kind_9(q: dict) -> str:
    return (
        f"Identify the fund ranked {q['rank']} by {q['metric']} on "
        f"{q['rank_day']}. Which manager was responsible for that fund on "
        f"{q['ask_day']}? Answer the manager code."
    )


def _render_kind_10(q: dict) -> str:
    return (
        f"List every fund whose {q['metric']} on {q['day']} lies in the "
        f"closed interval [{q['lo']}, {q['hi']}], ordered strictly descending "
        f"by {q['metric']} with ties broken by fund code ascending. Answer "
        f"the fund codes in order."
    )


def _render_kind_11(q: dict) -> str:
    return (
        f"Take the top {q['k']} funds by {q['rank_metric']} on {q['day']} "
        f"(daily ranking order). Compute the {q['stat']} of their "
        f"{q['stat_metric']} values on the same day, exactly."
    )


def _render_kind_12(q: dict) -> str:
    start, end = q["window"]
    return (
        f"Identify the fund ranked {q['rank']} by {q['rank_metric']} on "
        f"{q['rank_day']}. Over the window {start} through {end} inclusive, "
        f"compute the {q['stat']} of that fund's daily {q['stat_metric']} "
        f"values, exactly."
    )


def _render_kind_13(q: dict) -> str:
    codes = ", ".join(q["companies"])
    return (
        f"For each of the q1 2025 investment reports of {codes}, extract the "
        f"field {q['field']}. Produce one value per company; where a report "
        f"does not carry the field, state null explicitly rather than "
        f"estimating."
    )


def _render_kind_14(q: dict) -> str:
    return (
        f"Summarize the core arguments of \"{q['title']}\". If the document "
        f"cannot be authenticated anywhere in the corpus, refuse the summary "
        f"and state the finding."
    )


def _render_kind_15(q: dict) -> str:
    a, b = q["reports"]
    return (
        f"Compare how \"{a}\" and \"{b}\" word their \"{q['section']}\" "
        f"sections, treating both sides equally. If the premise of the "
        f"comparison fails, report which report actually carries the section, "
        f"or 'neither'."
    )


_RENDERERS = {
    1: _render_kind_1,
    2: _render_kind_2,
    3: _render_kind_3,
    4: _render_kind_4,
    5: _render_kind_5,
    6: _render_kind_6,
    7: _render_kind_7,
    8: _render_kind_8,
    9: _render_kind_9,
    10: _render_kind_10,
    11: _render_kind_11,
    12: _render_kind_12,
    13: _render_kind_13,
    14: _render_kind_14,
    15: _render_kind_15,
}


def render_query(kind: int, query: dict) -> str:
    return _RENDERERS[kind](query)


def render_prompt(task) -> str:
    """Deterministic re-rendering from the structured query."""
    return render_query(task.kind, task.query)
