"""Output-frequency distributions and the two universal-mixture variants.

Everything here is exact rational arithmetic: the whole point of the
comparison is whether total masses stay at or below 1, and that distinction
must not hinge on rounding.  Floating point appears only in the final
negative-log conversion.

Two weighting schemes over enumerated machines:

* ``flawed``  -- each machine halting on empty input contributes 1/i to its
  output's mass.  The per-output masses look harmless, but the total over
  all outputs is a harmonic-type sum that crosses 1 at a small index
  ceiling, so this is not a (sub-)probability at all.
* ``corrected`` -- machine i is weighted by alpha(i) with sum(alpha) <= 1
  (the default alpha are the Kraft weights of the self-delimiting index
  code), and programs of one fixed block length L each carry 2^-L inside a
  machine.  The total is then provably at most sum(alpha) <= 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .enumeration import MachineRange, index_to_table
from .halting import Simulator, analyze_table

FLAWED, CORRECTED, FREQUENCY = "flawed", "corrected", "frequency"


class UndefinedMassError(ValueError):
    """The requested output has zero mass at this scale; the estimate is
    undefined (insufficient universe/budget, not infinite complexity)."""


@dataclass(frozen=True)
class TableMeta:
    scheme: str
    universe: str
    budget: int
    block_len: int | None = None


@dataclass
class DistributionTable:
    entries: dict  # output string -> Fraction
    meta: TableMeta

    def total_mass(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def sorted_items(self):
        return sorted(self.entries.items(), key=lambda kv: (len(kv[0]), kv[0]))


def default_alpha(i: int) -> Fraction:
    """Kraft weight of the self-delimiting index code: 2^-(2|bin(i)|+1)."""
    if i < 1:
        raise ValueError("indices start at 1")
    return Fraction(1, 1 << (2 * i.bit_length() + 1))


def alpha_sum_upto(max_i: int) -> Fraction:
    """Exact sum of default_alpha(i) for i <= max_i, grouped by bit length."""
    total = Fraction(0)
    k = 1
    while (1 << (k - 1)) <= max_i:
        count = min(max_i, (1 << k) - 1) - (1 << (k - 1)) + 1
        total += Fraction(count, 1 << (2 * k + 1))
        k += 1
    return total


def output_frequency(
    universe: MachineRange, budget: int, progress=None
) -> DistributionTable:
    """Empty-input halting frequencies over every machine in the universe.

    Machines with invalid output or without a halting proof only count in
    the denominator.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    total = universe.count
    if total == 0:
        raise ValueError("empty universe")
    counts = {}
    done = 0
    for i in universe.indices():
        _, table = index_to_table(i)
        res = analyze_table(table, (), budget)
        if res[0] == "h" and res[2] is not None:
            counts[res[2]] = counts.get(res[2], 0) + 1
        done += 1
        if progress is not None and done % 1_000_000 == 0:
            progress(done)
    entries = {x: Fraction(c, total) for x, c in counts.items()}
    return DistributionTable(
        entries=entries,
        meta=TableMeta(scheme=FREQUENCY, universe=universe.describe(), budget=budget),
    )


def _flawed_counts(n_max: int, budget: int):
    """Output string -> exact 1/i mass, over machines 1..n_max on empty input."""
    masses = {}
    for i in range(1, n_max + 1):
        _, table = index_to_table(i)
        res = analyze_table(table, (), budget)
        if res[0] == "h" and res[2] is not None:
            masses[res[2]] = masses.get(res[2], Fraction(0)) + Fraction(1, i)
    return masses


def flawed_mass(x: str | None, n_max: int, budget: int) -> Fraction:
    """Harmonically weighted mass of output x (or total over all outputs
    when x is None) over the first n_max machines."""
    if n_max < 1:
        raise ValueError("need at least one machine")
    masses = _flawed_counts(n_max, budget)
    if x is None:
        return sum(masses.values(), Fraction(0))
    return masses.get(x, Fraction(0))


def flawed_table(n_max: int, budget: int) -> DistributionTable:
    return DistributionTable(
        entries=_flawed_counts(n_max, budget),
        meta=TableMeta(scheme=FLAWED, universe=f"i1-{n_max}", budget=budget),
    )


def flawed_crossing(n_cap: int, budget: int):
    """First N <= n_cap where the total flawed mass exceeds 1 exactly,
    with the mass at that N; (None, final mass) if never."""
    total = Fraction(0)
    one = Fraction(1)
    for i in range(1, n_cap + 1):
        _, table = index_to_table(i)
        res = analyze_table(table, (), budget)
        if res[0] == "h" and res[2] is not None:
            total += Fraction(1, i)
            if total > one:
                return i, total
    return None, total


def _corrected_counts(universe, block_len, budget, sim, progress=None):
    """Output -> number of halting length-L programs, per machine index."""
    per_machine = {}
    done = 0
    for i in universe.indices():
        counts = {}
        if block_len == 0:
            out = sim.halted_output(i, "", budget)
            if out is not None:
                counts[out] = 1
        else:
            for v in range(1 << block_len):
                p = format(v, f"0{block_len}b")
                out = sim.halted_output(i, p, budget)
                if out is not None:
                    counts[out] = counts.get(out, 0) + 1
        if counts:
            per_machine[i] = counts
        done += 1
        if progress is not None and done % 100_000 == 0:
            progress(done)
    return per_machine


def corrected_table(
    universe: MachineRange,
    block_len: int,
    budget: int,
    alpha=default_alpha,
    sim: Simulator | None = None,
    progress=None,
) -> DistributionTable:
    """Mixture sum_i alpha(i) * #(length-L programs with output x) / 2^L."""
    if block_len < 0:
        raise ValueError("block length must be >= 0")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if universe.count == 0:
        raise ValueError("empty universe")
    if sim is None:
        sim = Simulator(universe)
    denom = 1 << block_len
    entries = {}
    for i, counts in _corrected_counts(universe, block_len, budget, sim, progress).items():
        a = alpha(i)
        for x, c in counts.items():
            entries[x] = entries.get(x, Fraction(0)) + a * Fraction(c, denom)
    table = DistributionTable(
        entries=entries,
        meta=TableMeta(
            scheme=CORRECTED,
            universe=universe.describe(),
            budget=budget,
            block_len=block_len,
        ),
    )
    assert table.total_mass() <= 1, "corrected scheme must be a sub-probability"
    return table


def corrected_mass(
    x: str | None,
    universe: MachineRange,
    block_len: int,
    budget: int,
    alpha=default_alpha,
    sim: Simulator | None = None,
) -> Fraction:
    table = corrected_table(universe, block_len, budget, alpha=alpha, sim=sim)
    if x is None:
        return table.total_mass()
    return table.entries.get(x, Fraction(0))


def neg_log_estimate(
    x: str,
    universe: MachineRange,
    block_len: int,
    budget: int,
    alpha=default_alpha,
    sim: Simulator | None = None,
) -> float:
    """-log2 of the corrected mass of x, in bits.

    This estimates the prefix-style complexity of x only up to the additive
    constant of the coding theorem; it is a comparison target, not a value
    of C(x) or K(x).
    """
    mass = corrected_mass(x, universe, block_len, budget, alpha=alpha, sim=sim)
    if mass == 0:
        raise UndefinedMassError(
            f"{x!r} was never produced at this scale; grow the universe or budget"
        )
    return math.log2(mass.denominator) - math.log2(mass.numerator)


# ---------------------------------------------------------------------------
# Exports. CSV columns are fixed; JSON mirrors the field names. Round-trips
# must be bit-exact, so masses travel as integer numerator/denominator.

CSV_HEADER = "output_string,mass_numerator,mass_denominator,scheme,universe,budget,L"


def table_to_csv(table: DistributionTable, config_digest: str | None = None) -> str:
    lines = []
    if config_digest is not None:
        lines.append(f"# manifest_config={config_digest}")
    lines.append(CSV_HEADER)
    m = table.meta
    block = "" if m.block_len is None else str(m.block_len)
    for x, mass in table.sorted_items():
        lines.append(
            f"{x},{mass.numerator},{mass.denominator},{m.scheme},{m.universe},{m.budget},{block}"
        )
    return "\n".join(lines) + "\n"


def table_from_csv(text: str) -> DistributionTable:
    rows = [
        line for line in text.splitlines() if line and not line.startswith("#")
    ]
    if not rows or rows[0] != CSV_HEADER:
        raise ValueError("not a distribution table CSV")
    entries = {}
    meta = None
    for line in rows[1:]:
        x, num, den, scheme, universe, budget, block = line.split(",")
        entries[x] = Fraction(int(num), int(den))
        meta = TableMeta(
            scheme=scheme,
            universe=universe,
            budget=int(budget),
            block_len=int(block) if block else None,
        )
    if meta is None:
        raise ValueError("empty table: meta row required")
    return DistributionTable(entries=entries, meta=meta)


def table_to_json(table: DistributionTable, config_digest: str | None = None) -> str:
    m = table.meta
    doc = {
        "meta": {
            "scheme": m.scheme,
            "universe": m.universe,
            "budget": m.budget,
            "L": m.block_len,
        },
        "entries": [
            {"output": x, "num": mass.numerator, "den": mass.denominator}
            for x, mass in table.sorted_items()
        ],
        "total": {
            "num": table.total_mass().numerator,
            "den": table.total_mass().denominator,
        },
    }
    if config_digest is not None:
        doc["manifest_config"] = config_digest
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def table_from_json(text: str) -> DistributionTable:
    doc = json.loads(text)
    meta = TableMeta(
        scheme=doc["meta"]["scheme"],
        universe=doc["meta"]["universe"],
        budget=doc["meta"]["budget"],
        block_len=doc["meta"]["L"],
    )
    entries = {e["output"]: Fraction(e["num"], e["den"]) for e in doc["entries"]}
    return DistributionTable(entries=entries, meta=meta)
