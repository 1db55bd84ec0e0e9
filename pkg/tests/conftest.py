import re
import sys
from datetime import datetime, timezone
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from opforensics.ingest import Corpus, PostRecord

DATA_DIR = Path(__file__).parent.parent / "data"

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion at the end of the run."""
    lines = []
    for status, label in (("passed", "PASS"), ("failed", "FAIL"), ("skipped", "SKIP")):
        for report in terminalreporter.stats.get(status, []):
            if report.when not in ("call", "setup"):
                continue
            match = _CRITERION.search(report.nodeid)
            if match:
                number, name = match.groups()
                lines.append((int(number), f"criterion {int(number):2d} [{label}] {name}"))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)


def utc(*args):
    return datetime(*args, tzinfo=timezone.utc)


def make_corpus(posts):
    """Corpus from (user, timestamp, text) or (user, timestamp, text, id)."""
    records = [PostRecord(*p) for p in posts]
    return Corpus.from_records(records)


@pytest.fixture(scope="session")
def bundled_profiles():
    from opforensics.langid import load_bundled_profiles

    return load_bundled_profiles()


@pytest.fixture(scope="session")
def language_corpus():
    from opforensics.synthetic import planted_language_corpus

    return planted_language_corpus(seed=0)


@pytest.fixture(scope="session")
def tempo_corpus():
    from opforensics.synthetic import planted_tempo_corpus

    return planted_tempo_corpus(seed=0)
