"""
Tests for the seeded property suite: generators, fixtures, shrinking
and report fingerprints
"""

import sys
sys.path.insert(0, 'src')

import os

from hypothesis import given, settings, strategies as st

from algebra.convolution import convolve
from algebra.element import AlgebraElement
from cli import generators as gen
from cli import suite
from cli.suite import (
    DEFAULT_SEED,
    Case,
    FIXTURES,
    PROPERTIES,
    SEED_ENV,
    THREADS_ENV,
    Verdict,
    case_specs,
    default_seed,
    paper_suite,
    prop,
    run_case,
    run_fixtures,
    run_random,
    worker_count,
)

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def test_case_specs_are_reproducible():
    """The same seed gives the same cases"""
    assert case_specs(7, 5) == case_specs(7, 5)
    assert case_specs(7, 5) != case_specs(8, 5)
    assert [s.case_id for s in case_specs(7, 5)] == [0, 1, 2, 3, 4]
    print("  Case Specs Reproducible: PASS")


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_case_sizes(seed):
    """At most three parts and sixty elements"""
    spec = gen.random_case_spec(0, seed)
    assert 1 <= len(spec.parts) <= gen.MAX_PARTS
    assert sum(p.size for p in spec.parts) <= gen.MAX_ELEMENTS
    assert all(p.points <= gen.MAX_POINTS for p in spec.parts)
    assert len(gen.build_groupoid(spec)) == sum(p.size for p in spec.parts)


@settings(max_examples=6, deadline=None)
@given(seeds)
def test_random_case_passes(seed):
    """Every registered property holds on a random case"""
    result = run_case(gen.random_case_spec(0, seed), minimize=False)
    failures = [(o.prop, o.witness, o.detail) for o in result.outcomes if not o.passed]
    assert not failures, failures
    assert len(result.outcomes) == len(PROPERTIES)


def test_fixtures():
    """Hand-computed values from the fixed fixtures"""
    result = run_fixtures()
    assert result.passed, [(o.prop, o.detail) for o in result.outcomes if not o.passed]
    assert [o.prop for o in result.outcomes] == sorted(FIXTURES)
    assert result.case_id == -1
    print("  Fixtures: PASS")


def test_shrinking():
    """A failure tied to the S3 part shrinks to that part alone"""
    spec = gen.CaseSpec(0, 11, (gen.PartSpec("Z/2", ("2",)), gen.PartSpec("S3", ("natural",)),
                                gen.PartSpec("Z/4", ("4",))))

    @prop("test.needs-s3")
    def _needs_s3(case):
        if any(p.group == "S3" for p in case.spec.parts):
            return Verdict(False, witness=("S3",), detail="S3 present")
        return Verdict(True)

    try:
        result = run_case(spec, properties=["test.needs-s3"])
    finally:
        PROPERTIES.pop("test.needs-s3")
    outcome = result.outcomes[0]
    assert not outcome.passed
    assert outcome.shrunk["groupoid"] == "S3⋉[natural]"
    assert outcome.shrunk["elements"]["f"] == []
    assert outcome.shrunk["witness"] == ["S3"]
    print("  Shrinking: PASS")


def test_fingerprint():
    """Equal seeds give equal fingerprints whatever the worker count"""
    serial = run_random(5, 3, threads=1)
    again = run_random(5, 3, threads=1)
    pooled = run_random(5, 3, threads=2)
    assert serial.fingerprint() == again.fingerprint() == pooled.fingerprint()
    assert serial.fingerprint() != run_random(6, 3, threads=1).fingerprint()
    assert [c.case_id for c in pooled.cases] == [0, 1, 2]
    doc = serial.to_dict(timings=False)
    assert all("seconds" not in o for c in doc["cases"] for o in c["outcomes"])
    assert all("seconds" not in entry for entry in doc["properties"].values())
    print("  Fingerprint: PASS")


def test_paper_suite():
    """Fixtures first, then the random cases"""
    report = paper_suite(3, cases=2, threads=1)
    assert report.suite == "paper-suite"
    assert [c.case_id for c in report.cases] == [-1, 0, 1]
    assert report.passed
    assert "PASS: 3 cases, 0 failures" in report.render_text()
    print("  Paper Suite: PASS")


def test_environment():
    """GROUPOIDLAB_SEED and GROUPOIDLAB_THREADS"""
    saved = {k: os.environ.get(k) for k in (SEED_ENV, THREADS_ENV)}
    try:
        os.environ[SEED_ENV] = "9"
        assert default_seed() == 9
        os.environ[SEED_ENV] = "nine"
        assert default_seed() == DEFAULT_SEED
        os.environ[THREADS_ENV] = "3"
        assert worker_count() == 3
        os.environ[THREADS_ENV] = "0"
        assert worker_count() == (os.cpu_count() or 1)
    finally:
        for key, value in saved.items():
            if value is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = value
    print("  Environment: PASS")


def _six_point_case():
    """Z/2 acting on three 2-point orbits: six units"""
    return Case(gen.CaseSpec(0, 4, (gen.PartSpec("Z/2", ("2", "2", "2")),)))


def test_algebra_residuals_are_absolute():
    """Large coefficients do not loosen the 1e-9 residual tolerance"""
    case = _six_point_case()
    x = case.groupoid.label(case.groupoid.units[0])
    case.elements["f"] = AlgebraElement.point_mass(case.haar, x, 500)
    check = PROPERTIES["algebra.identity-is-convolution"]
    assert check(case).passed

    exact = suite.h_hat_apply

    def _off_by(h, f, g):
        return convolve(f, g) + AlgebraElement.point_mass(f.haar, x, 4e-7)

    suite.h_hat_apply = _off_by
    try:
        verdict = check(case)
    finally:
        suite.h_hat_apply = exact
    assert not verdict.passed
    assert abs(verdict.residual - 4e-7) < 1e-10
    print("  Algebra Residuals Are Absolute: PASS")


def test_every_target_unit_is_checked():
    """Representation properties visit every fiber G_t, not a prefix"""
    case = _six_point_case()
    assert len(case.groupoid.units) == 6
    seen = {}
    exact = suite.check_nondegenerate

    def _record(h, t):
        seen.setdefault(id(h), set()).add(t)
        return exact(h, t)

    suite.check_nondegenerate = _record
    try:
        verdict = PROPERTIES["spectra.nondegenerate"](case)
    finally:
        suite.check_nondegenerate = exact
    assert verdict.passed
    for h in case.zoo:
        assert seen[id(h)] == set(h.target.units)
    identity = next(h for h in case.zoo if h.target is case.groupoid)
    assert max(identity.target.units.index(t) for t in seen[id(identity)]) == 5
    print("  Every Target Unit Is Checked: PASS")


if __name__ == "__main__":
    print("\nRunning tests...\n")
    test_case_specs_are_reproducible()
    test_case_sizes()
    test_random_case_passes()
    test_fixtures()
    test_shrinking()
    test_fingerprint()
    test_paper_suite()
    test_environment()
    test_algebra_residuals_are_absolute()
    test_every_target_unit_is_checked()
    print("\nAll tests passed!\n")
