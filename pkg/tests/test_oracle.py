import itertools
from fractions import Fraction

import pytest

from qface.errors import CertificateError, TooLarge
from qface.faces import face_lattice
from qface.families import double_cycle, path, polygon, random_quiver
from qface.geometry import RationalVector
from qface.oracle import (
    LPProblem,
    SupportCertificate,
    brute_force_lattice,
    compare_lattices,
    is_face_oracle,
    solve_feasibility,
    verify,
)
from qface.quiver import EdgeSubset, Quiver

from conftest import certificate_failures
from corpus import DIAMOND, seeded_random_quivers


class TestCertificates:
    def test_empty_set(self):
        cert = is_face_oracle(DIAMOND, 0)
        assert set(cert.normal.coords) == {0} and cert.offset == 1

    def test_everything(self):
        cert = is_face_oracle(DIAMOND, DIAMOND.full_mask)
        assert set(cert.normal.coords) == {0} and cert.offset == 0

    def test_diagonal_is_not_a_face(self):
        assert is_face_oracle(DIAMOND, DIAMOND.subset([(0, 1), (1, 3)])) is None

    def test_opposite_edges_form_a_face(self):
        r = DIAMOND.subset([(0, 1), (2, 3)])
        cert = is_face_oracle(DIAMOND, r)
        assert cert is not None
        assert cert.violations(DIAMOND, r.mask) == []

    def test_validate_rejects_wrong_face(self):
        cert = is_face_oracle(path(2), 1)
        with pytest.raises(CertificateError):
            cert.validate(path(2), 2)

    def test_scaling(self):
        q = double_cycle(4)
        for mask, cert in brute_force_lattice(q).certificates.items():
            for factor in (Fraction(1, 3), 2, 7):
                cert.scaled(factor).normalized(q, mask).validate(q, mask)
            cert.scaled(5).validate(q, mask)
        with pytest.raises(ValueError):
            cert.scaled(0)

    def test_normalized_has_unit_slack(self):
        q = path(3)
        cert = is_face_oracle(q, 1).scaled(4)
        slacks = [cert.normalized(q, 1).offset - cert.normalized(q, 1).value(q, i) for i in (1, 2)]
        assert min(slacks) == 1


class TestSolver:
    def test_infeasible(self):
        problem = LPProblem(1, ge=[[Fraction(1)], [Fraction(-1)]], ge_rhs=[Fraction(1), Fraction(0)])
        assert solve_feasibility(problem) is None

    def test_free_variables_go_negative(self):
        problem = LPProblem(2, eq=[[Fraction(1), Fraction(1)]], eq_rhs=[Fraction(-3)], ge=[[Fraction(1), Fraction(0)]], ge_rhs=[Fraction(1)])
        x = solve_feasibility(problem)
        assert x[0] + x[1] == -3 and x[0] >= 1

    def test_no_rows(self):
        assert solve_feasibility(LPProblem(2)) == [0, 0]

    def test_shape_check(self):
        with pytest.raises(ValueError):
            LPProblem(2, eq=[[Fraction(1)]], eq_rhs=[Fraction(0)])


class TestBruteForce:
    def test_path(self):
        assert brute_force_lattice(path(2)).dims == {0: -1, 1: 0, 2: 0, 3: 1}

    def test_hexagon(self):
        lattice = brute_force_lattice(double_cycle(3))
        assert lattice.f_vector().counts == (6, 6)

    def test_square_frustum(self):
        assert brute_force_lattice(double_cycle(4)).f_vector().counts == (8, 12, 6)

    def test_guard(self, monkeypatch):
        monkeypatch.setenv("QFACE_EDGE_LIMIT", "5")
        with pytest.raises(TooLarge):
            brute_force_lattice(double_cycle(3))


@pytest.mark.parametrize(
    "q",
    [double_cycle(4), polygon("++---+"), random_quiver(5, 7, seed=3)],
    ids=["D(C_4)", "balanced hexagon", "random 5/7"],
)
def test_verify_matches(q):
    report = verify(q)
    assert report.match, report.discrepancy
    assert str(report) == f"MATCH: {len(face_lattice(q))} faces, dim {report.dim}"


def test_verify_fault_injection():
    report = verify(double_cycle(4), inject_fault=True)
    assert not report.match
    assert str(report).startswith("MISMATCH: face {")


def test_compare_reports_dimension_difference():
    q = path(2)
    good = face_lattice(q)
    bad = type(good)(q, {**good.dims, 3: 2})
    assert "dimension 2 vs oracle 1" in compare_lattices(q, bad, good)


def _faces(q):
    return set(brute_force_lattice(q).dims)


def test_faces_of_faces_are_faces():
    for q in seeded_random_quivers(30, 7, seed=91) + [DIAMOND]:
        faces = _faces(q)
        for mask in faces:
            if mask in (0, q.full_mask):
                continue
            sub = EdgeSubset(q, mask).as_quiver()
            sub_faces = _faces(sub)
            # sub-quiver edge i is the i-th set bit of mask in parent order
            bits = EdgeSubset(q, mask).indices
            for sub_mask in sub_faces:
                parent_mask = sum(1 << bits[i] for i in range(len(bits)) if sub_mask >> i & 1)
                assert parent_mask in faces


def test_intersections_of_faces_are_faces():
    for q in seeded_random_quivers(30, 8, seed=92) + [double_cycle(4)]:
        faces = _faces(q)
        for a, b in itertools.combinations(faces, 2):
            assert a & b in faces


def test_every_emitted_certificate_so_far_revalidates(emitted_certificates):
    is_face_oracle(double_cycle(3), double_cycle(3).subset([(0, 1)]))
    assert emitted_certificates
    assert certificate_failures(emitted_certificates) == []


def test_revalidation_catches_bad_certificate():
    q = path(1)
    forged = SupportCertificate(RationalVector(q.vertices, (0, 0)), Fraction(1))
    assert certificate_failures([(q, 1, forged)]) != []
