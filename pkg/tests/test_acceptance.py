"""Acceptance battery: one test per published criterion.

The battery itself lives in liehermitian.verify and is reused by the
``verify`` subcommand; this file pins it into the test run so that
every criterion prints exactly one pass or fail line under ``pytest
-v``.

Criterion 11 currently fails, and the failure is intentional.  The
rank-r paired-block generator admits random draws with r >= 2; those
draws are integrable, unimodular and balanced, yet their torsion is not
parallel under the skew-torsion connection, because the per-index
parallelism equations force every column of one paired block to be
proportional to every column of the other, capping the rank at one.
The generator is sampled over its full stated parameter range rather
than quietly restricting to r = 1, so the criterion reports the
conflict instead of hiding it.  test_rank_obstruction_fully_explains_11
pins the failure signature: every failing draw carries the obstruction
tag, and nothing else fails.
"""

import pytest

from liehermitian import verify


@pytest.fixture(scope="session")
def battery():
    results = verify.run_battery()
    return {r.number: r for r in results}


_IDS = ["%02d-%s" % (n, verify.SLUGS[n]) for n in sorted(verify.SLUGS)]


@pytest.mark.parametrize("number", sorted(verify.SLUGS), ids=_IDS)
def test_criterion(battery, number):
    res = battery[number]
    assert res.checks > 0
    message = "criterion-%d %s: %s" % (number, res.slug, res.detail or "")
    if res.failures:
        message += "\n  " + "\n  ".join(res.failures[:8])
    assert res.passed, message


def test_rank_obstruction_fully_explains_11(battery):
    res = battery[11]
    assert not res.passed, (
        "criterion 11 passed; the rank>=2 draws no longer conflict and the "
        "documented-obstruction guard should be retired")
    tag = verify._DISCREPANCY_TAG
    unexplained = [f for f in res.failures if tag not in f]
    assert res.failures, "criterion 11 failed without recording any failure"
    assert not unexplained, (
        "criterion 11 has failures beyond the documented rank>=2 "
        "obstruction: %r" % unexplained[:5])
    assert "0 unexplained" in res.detail


def test_battery_is_seed_stable():
    one = verify.run_battery(name_filter="criterion-4")
    two = verify.run_battery(name_filter="criterion-4")
    assert [r.as_dict() for r in one] == [r.as_dict() for r in two]
