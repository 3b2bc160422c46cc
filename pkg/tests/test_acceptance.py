"""Reproduction criteria, one PASS/FAIL line each (run with -s to see them).

Each criterion is also held to its wall-clock budget: "seconds" is read as
under a minute, "minutes" as under ten.
"""

import pytest

from hjelmslev_arcs import reproduce

SECONDS, MINUTES = 60, 600

CRITERIA = [
    (1, "plane cardinalities", reproduce.check_plane_sizes, 60),
    (2, "Singer orbit structure on PHG(2,GR(16,4))", reproduce.check_singer_orbits, SECONDS),
    (3, "(126,8)-arc", reproduce.check_reference_arc, SECONDS),
    (4, "code pipeline", reproduce.check_code_pipeline, MINUTES),
    (5, "Griesmer step", reproduce.check_griesmer, SECONDS),
    (6, "(155,8)-multiarc over Z25", reproduce.check_multiarc, MINUTES),
    (7, "oracle equivalence on PHG(2,Z4)", reproduce.check_oracle, MINUTES),
    (8, "small lower bounds", None, 600),
    (9, "invariant suites", reproduce.check_invariants, SECONDS),
]


@pytest.mark.parametrize("number,name,fn,limit", CRITERIA, ids=[f"criterion-{c[0]}" for c in CRITERIA])
def test_criterion(number, name, fn, limit, tmp_path):
    if fn is None:
        def fn():
            return reproduce.check_small_bounds(tmp_path / "certificates")
    check = reproduce._timed(number, name, fn)
    print(check.line())
    assert check.passed, check.detail
    assert check.seconds < limit, f"took {check.seconds:.1f}s, budget {limit}s"
