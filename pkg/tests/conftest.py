import pytest

# criterion number -> (title, passed, detail lines)
CRITERIA: dict[int, tuple[str, bool, list[str]]] = {}


class Checks:
    """Collects named sub-checks of one acceptance criterion and fails at the end."""

    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.lines = []
        self.failed = []

    def check(self, label, ok, detail=""):
        ok = bool(ok)
        self.lines.append(f"{'ok  ' if ok else 'FAIL'} {label}" + (f" ({detail})" if detail else ""))
        if not ok:
            self.failed.append(label)
        return ok

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None:
            self.check("raised", False, repr(exc))
        CRITERIA[self.number] = (self.title, not self.failed, self.lines)
        if exc_type is None:
            assert not self.failed, f"criterion {self.number} failed: {', '.join(self.failed)}"
        return False


@pytest.fixture
def criterion(request):
    def make(number, title):
        return Checks(number, title)
    return make


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, ok, lines = CRITERIA[n]
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {title}")
        for ln in lines:
            tr.write_line(f"          {ln}")
