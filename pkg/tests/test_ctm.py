from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kolmobench.ctm import (
    DistributionTable,
    TableMeta,
    UndefinedMassError,
    alpha_sum_upto,
    corrected_mass,
    corrected_table,
    default_alpha,
    flawed_crossing,
    flawed_mass,
    flawed_table,
    neg_log_estimate,
    output_frequency,
    table_from_csv,
    table_from_json,
    table_to_csv,
    table_to_json,
)
from kolmobench.enumeration import MachineRange
from kolmobench.estimator import identity_index, upper_bound_C
from kolmobench.halting import Simulator

N1 = MachineRange(1, 1)

# Exact values fixed by exhaustive runs over the full 1-state layer.
N1_FREQUENCY = {
    "": Fraction(161, 500),
    "0": Fraction(18, 125),
    "1": Fraction(18, 125),
}
ALPHA_SUM_2_20 = Fraction(2199021158401, 8796093022208)


def test_output_frequency_single_machine_universe():
    t = output_frequency(MachineRange(1, 1, 1, 1), budget=16)
    assert t.entries == {"": Fraction(1)}
    assert t.total_mass() == 1


def test_output_frequency_full_one_state_layer():
    t = output_frequency(N1, budget=256)
    assert t.entries == N1_FREQUENCY
    assert t.total_mass() == Fraction(61, 100) <= 1


def test_output_frequency_monotone_in_budget():
    lo = output_frequency(N1, budget=1)
    hi = output_frequency(N1, budget=64)
    for x, mass in lo.entries.items():
        assert hi.entries.get(x, Fraction(0)) >= mass
    assert lo.total_mass() <= hi.total_mass()


def test_flawed_mass_first_machine():
    assert flawed_mass(None, 1, budget=16) == 1


def test_flawed_mass_nondecreasing_in_ceiling():
    masses = [flawed_mass(None, n, budget=64) for n in range(1, 30)]
    assert all(a <= b for a, b in zip(masses, masses[1:]))


def test_flawed_crossing_is_three():
    crossing, mass_at = flawed_crossing(100, budget=256)
    assert crossing == 3
    assert mass_at == Fraction(4, 3) > 1


def test_flawed_table_masses_sum_to_all_mass():
    t = flawed_table(50, budget=64)
    assert t.total_mass() == flawed_mass(None, 50, budget=64)
    assert t.meta.scheme == "flawed"


def test_default_alpha_values():
    assert default_alpha(1) == Fraction(1, 8)
    assert default_alpha(991) == Fraction(1, 2**21)
    with pytest.raises(ValueError):
        default_alpha(0)


def test_alpha_sum_kraft_certificate():
    s = alpha_sum_upto(1 << 20)
    assert s == ALPHA_SUM_2_20
    assert s < 1
    # direct small check against naive summation
    naive = sum(default_alpha(i) for i in range(1, 300))
    assert alpha_sum_upto(299) == naive


def test_corrected_identity_machine_only():
    u = MachineRange(1, 1, identity_index(), identity_index())
    t = corrected_table(u, block_len=2, budget=16)
    share = default_alpha(identity_index()) / 4
    assert t.entries == {"00": share, "01": share, "10": share, "11": share}


def test_corrected_block_zero_degenerates_to_weighted_frequency():
    u = MachineRange(1, 1, 1, 10)
    t = corrected_table(u, block_len=0, budget=16)
    expected = {}
    from kolmobench.enumeration import index_to_machine
    from kolmobench.tm_core import Halted, run

    for i in range(1, 11):
        out = run(index_to_machine(i), "", 16)
        if isinstance(out, Halted):
            expected[out.output] = expected.get(out.output, Fraction(0)) + default_alpha(i)
    assert t.entries == expected


def test_corrected_total_mass_never_exceeds_alpha_budget():
    for interval in ((1, 1000), (1, 3000)):
        u = MachineRange(1, 2, *interval)
        for block in (0, 2, 4):
            total = corrected_mass(None, u, block, budget=64)
            assert total <= alpha_sum_upto(interval[1]) <= Fraction(1, 4) < 1


def test_corrected_monotone_in_budget_and_universe():
    u = MachineRange(1, 1)
    small = corrected_table(u, 2, budget=2)
    big = corrected_table(u, 2, budget=64)
    for x, mass in small.entries.items():
        assert big.entries.get(x, Fraction(0)) >= mass
    narrow = corrected_mass(None, MachineRange(1, 1, 1, 200), 2, budget=64)
    wide = corrected_mass(None, MachineRange(1, 1, 1, 1000), 2, budget=64)
    assert narrow <= wide


def test_neg_log_exact_power_of_two():
    u = MachineRange(1, 1, 1, 1)  # machine 1 halts on eps with eps
    mass = corrected_mass("", u, 0, budget=8)
    assert mass == Fraction(1, 8)
    assert neg_log_estimate("", u, 0, budget=8) == 3.0


def test_neg_log_undefined_for_missing_output():
    with pytest.raises(UndefinedMassError):
        neg_log_estimate("0110", MachineRange(1, 1, 1, 3), 1, budget=8)


def test_neg_log_nonincreasing_as_universe_grows():
    small = neg_log_estimate("1", MachineRange(1, 1, 1, 200), 2, budget=64)
    big = neg_log_estimate("1", MachineRange(1, 1, 1, 1000), 2, budget=64)
    assert big <= small


def test_gap_report_produced_and_finite():
    import math

    u = MachineRange(1, 1)
    sim = Simulator(u)
    strings = [""] + [
        format(v, f"0{L}b") for L in (1, 2, 3) for v in range(1 << L)
    ]
    gaps = {}
    for x in strings:
        try:
            est = neg_log_estimate(x, u, 4, budget=64, sim=sim)
        except UndefinedMassError:
            continue
        bound, _ = upper_bound_C(x, u, budget=64, max_prog_len=4, sim=sim)
        gaps[x] = est - bound
    assert gaps, "no string got a defined estimate"
    assert all(math.isfinite(g) for g in gaps.values())


def _sample_table():
    return DistributionTable(
        entries={"": Fraction(1, 3), "10": Fraction(3, 7)},
        meta=TableMeta(scheme="frequency", universe="s1-1", budget=9),
    )


def test_csv_round_trip_bit_exact():
    t = _sample_table()
    text = table_to_csv(t, config_digest="abc123")
    back = table_from_csv(text)
    assert back.entries == t.entries and back.meta == t.meta
    assert table_to_csv(back, config_digest="abc123") == text


def test_json_round_trip_bit_exact():
    t = corrected_table(MachineRange(1, 1, 1, 50), 1, budget=32)
    text = table_to_json(t)
    back = table_from_json(text)
    assert back.entries == t.entries and back.meta == t.meta
    assert table_to_json(back) == text


@given(
    st.dictionaries(
        st.text(alphabet="01", max_size=5),
        st.fractions(min_value=0, max_value=1),
        max_size=6,
    )
)
def test_csv_round_trip_property(entries):
    t = DistributionTable(
        entries=entries,
        meta=TableMeta(scheme="frequency", universe="s1-2", budget=3),
    )
    if not entries:
        return
    back = table_from_csv(table_to_csv(t))
    assert back.entries == t.entries
