import pytest

from pepin.dnf import parse_dnf

# exact count 10: five (x1, x2, x3) patterns, x4 free
THREE_CUBE_TEXT = "p dnf 4 3\n1 2 0\n-1 3 0\n2 -3 0\n"
THREE_CUBE_COUNT = 10


@pytest.fixture
def three_cube():
    return parse_dnf(THREE_CUBE_TEXT)


@pytest.fixture
def write_dnf(tmp_path):
    """Write DNF text to a file under tmp_path and return its path."""
    def _write(text, name="formula.dnf"):
        path = tmp_path / name
        path.write_text(text, encoding="ascii")
        return path
    return _write


@pytest.fixture
def three_cube_text():
    return THREE_CUBE_TEXT
