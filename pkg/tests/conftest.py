from fractions import Fraction

import pytest

from qface import oracle

# every certificate the oracle emits during the session: (quiver, mask, certificate)
EMITTED_CERTIFICATES = []
# criterion number -> PASS/FAIL line, filled by test_acceptance
ACCEPTANCE_RESULTS = {}


def _record(q, mask, cert):
    EMITTED_CERTIFICATES.append((q, mask, cert))


def certificate_failures(records):
    """Re-check certificates by direct evaluation, independent of the oracle's own validator."""
    failures = []
    for q, mask, cert in records:
        c, b = cert.normal.coords, Fraction(cert.offset)
        for i, (t, h) in enumerate(q.edges):
            value = Fraction(c[t]) - Fraction(c[h])
            on_face = bool(mask >> i & 1)
            if (on_face and value != b) or (not on_face and b - value < 1):
                failures.append((q.edge_ids(), mask, i))
                break
    return failures


def pytest_configure(config):
    oracle.add_certificate_listener(_record)


def pytest_sessionfinish(session, exitstatus):
    failures = certificate_failures(EMITTED_CERTIFICATES)
    if failures:
        session.exitstatus = 1
        print(f"\n{len(failures)} emitted certificates failed re-validation: {failures[:3]}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS and not EMITTED_CERTIFICATES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[number])
    failures = certificate_failures(EMITTED_CERTIFICATES)
    verdict = "PASS" if not failures else "FAIL"
    terminalreporter.write_line(
        f"criterion 9 (whole session): {verdict} ({len(EMITTED_CERTIFICATES)} certificates, {len(failures)} failures)"
    )


@pytest.fixture
def emitted_certificates():
    return EMITTED_CERTIFICATES
