from fractions import Fraction as Fr

import pytest

from lrgauge.functions import CounterexampleF, polynomial
from lrgauge.lr_analysis import s_set
from lrgauge.numerics import Enclosure
from lrgauge.partitions import (
    CantorRankGauge,
    ConstantGauge,
    Division,
    PiecewiseConstantGauge,
    TaggedInterval,
    is_fine,
    validate_division,
)
from lrgauge.variation import (
    BadRank,
    Unreachable,
    VariationReport,
    adversarial_division,
    adversarial_report,
    exceeds_paper_bound,
    minimal_workable_rank,
    paper_bound,
    sfine_check,
    tags_in_cantor,
    var_sum,
    varap_sum,
    variation_search,
)

F = CounterexampleF()


def test_minimal_rank():
    assert minimal_workable_rank(ConstantGauge(Fr(1, 5))) == (2, "LL")
    assert minimal_workable_rank(ConstantGauge(1)) == (0, "")
    n, a = minimal_workable_rank(PiecewiseConstantGauge((Fr(1, 2),), (Fr(1, 1000), Fr(1, 2))))
    assert (n, a) == (1, "R")


def test_constant_gauge_division():
    d = adversarial_division(F, ConstantGauge(Fr(1, 5)), 2, 3)
    assert len(d) == 7 and validate_division(d) and tags_in_cantor(d)
    assert all(t.seg.length <= 2 * Fr(1, 3**5) or t.seg.length <= Fr(1, 27) for t in d)
    one = adversarial_division(F, ConstantGauge(1), 0, 1)
    assert [(t.seg.left, t.seg.right, t.tag) for t in one] == [(Fr(1, 3), Fr(2, 3), Fr(1, 3))]


def test_rank_gauge_division():
    g = CantorRankGauge({"L": Fr(1, 2), "R": Fr(1, 10**6)}, Fr(1, 10**6))
    d = adversarial_division(F, g, 1, 4)
    assert validate_division(d) and all(is_fine(t, g) for t in d)
    assert all(t.tag < Fr(1, 3) + Fr(1, 10**9) for t in d)


def test_bad_rank():
    with pytest.raises(BadRank):
        adversarial_division(F, ConstantGauge(Fr(1, 100)), 1, 2)
    with pytest.raises(BadRank):
        adversarial_division(F, ConstantGauge(1), -1, 2)


def test_paper_bound_values():
    assert paper_bound(2, 3, 1) == Enclosure.exact(Fr(7, 20))
    assert paper_bound(2, 13, 1).lo == Fr(8191, 60)
    assert paper_bound(2, 10, 1).lo == Fr(1023, 48)
    assert paper_bound(2, 3, 2) == Enclosure.exact(Fr(7, 10))
    assert exceeds_paper_bound(Fr(7, 20) + Fr(1, 10**9), 2, 3, 1)
    assert not exceeds_paper_bound(Fr(7, 20), 2, 3, 1)


@pytest.mark.parametrize("r", [1, 2])
@pytest.mark.parametrize("m", [5, 30])
def test_monotone_in_l_and_beats_bound(r, m):
    g = ConstantGauge(Fr(1, m))
    prev = Fr(0)
    for l in range(1, 11):
        rep = adversarial_report(F, g, r, l)
        n, _ = rep.params
        assert exceeds_paper_bound(rep.sum.lo, n, l, r)
        assert rep.sum.lo >= prev
        assert tags_in_cantor(rep.division)
        prev = rep.sum.lo


def test_report_refuses_weak_sums():
    d = adversarial_division(F, ConstantGauge(1), 0, 1)
    with pytest.raises(ValueError):
        VariationReport(d, 1, Enclosure.exact(Fr(1, 100)), Fr(1, 4), "const:1/1", (0, 1))


def test_search_examples():
    rep = variation_search(F, ConstantGauge(Fr(1, 5)), 1, Fr(1, 100))
    assert rep.params == (2, 1)
    rep = variation_search(F, ConstantGauge(Fr(1, 5)), 1, 20)
    assert rep.sum.lo >= 20 and rep.params[1] == 10
    lines = rep.to_csv().splitlines()
    assert lines[0] == "n,l,r,k-count,sum.lo,sum.hi,paper_bound,gauge_descr"
    with pytest.raises(Unreachable):
        variation_search(F, ConstantGauge(Fr(1, 5)), 1, 10**6, l_max=5)


def test_var_and_varap_examples():
    line = polynomial((0, 1))
    const = polynomial((Fr(1, 7),))
    d = Division((TaggedInterval.of(0, Fr(1, 2), 0), TaggedInterval.of(Fr(1, 2), 1, 1)))
    assert var_sum(const, d, 1) == Enclosure.exact(0)
    assert var_sum(line, Division((TaggedInterval.of(0, 1, 0),)), 1) == Enclosure.exact(Fr(1, 2))
    assert varap_sum(line, d) == Enclosure.exact(1)
    assert varap_sum(const, d) == Enclosure.exact(0)


def test_contrast_on_cantor_endpoints():
    d = adversarial_division(F, ConstantGauge(Fr(1, 5)), 2, 4)
    assert varap_sum(F, d) == Enclosure.exact(0)
    assert var_sum(F, d, 1).lo > 0


def test_sfine_check():
    inner, _ = s_set(polynomial((0, 1)), 0, 1, 1)
    assert sfine_check(TaggedInterval.of(0, Fr(1, 4), 0), inner)
    assert not sfine_check(TaggedInterval.of(0, Fr(3, 4), 0), inner)
