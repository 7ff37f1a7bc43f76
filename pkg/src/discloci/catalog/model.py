"""Fixture files: metadata, an input block in the kind's own format, and an `expected:` block."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

KINDS = ("symbolic", "dual", "curve-pencil", "rnc-projection", "double-cover", "projection",
         "numeric", "cyclic-grid", "segre-profile", "documentation")
META_KEYS = ("id", "kind", "qq", "seed", "note")
PROVENANCE_TAGS = ("published", "derived", "trivial")


class FixtureError(ValueError):
    pass


@dataclass(frozen=True)
class Expectation:
    quantity: str
    value: str
    provenance: str
    line: int


@dataclass
class Fixture:
    id: str
    kind: str
    body: str
    expected: list[Expectation]
    qq: bool = False
    seed: int = 0
    notes: list[str] = field(default_factory=list)
    source: str = ""

    def body_entries(self) -> list[tuple[int, int, str, str]]:
        """(line, column of the value, key, value) for every non-blank input line."""
        out = []
        for lineno, raw in enumerate(self.body.splitlines(), 1):
            line = raw.split("#", 1)[0].rstrip()
            if not line.strip():
                continue
            key, sep, rest = line.partition(":")
            if not sep:
                raise FixtureError(f"{self.source or self.id}:{lineno}: expected 'key: value'")
            col = len(key) + 2 + len(rest) - len(rest.lstrip())
            out.append((lineno, col, key.strip(), rest.strip()))
        return out


def parse_fixture(text: str, source: str = "") -> Fixture:
    meta: dict[str, str] = {}
    notes = []
    body = []
    expected = []
    in_expected = False
    where = source or "<fixture>"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            if not in_expected:
                body.append("")
            continue
        if in_expected:
            qty, sep, rest = line.strip().partition(":")
            value, bar, prov = rest.partition("|")
            if not sep or not bar or not prov.strip():
                raise FixtureError(f"{where}:{lineno}: expected 'quantity: value | provenance'")
            tag = prov.strip().split(":", 1)[0]
            if tag not in PROVENANCE_TAGS:
                raise FixtureError(f"{where}:{lineno}: provenance must start with one of "
                                   + ", ".join(t + ":" for t in PROVENANCE_TAGS))
            expected.append(Expectation(qty.strip(), value.strip(), prov.strip(), lineno))
            continue
        if line.strip() == "expected:":
            in_expected = True
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if sep and key in META_KEYS:
            if key == "note":
                notes.append(value.strip())
            elif key in meta:
                raise FixtureError(f"{where}:{lineno}: duplicate {key!r}")
            else:
                meta[key] = value.strip()
            body.append("")  # keep body line numbers aligned with the file
            continue
        body.append(line)
    for key in ("id", "kind"):
        if key not in meta:
            raise FixtureError(f"{where}: missing {key!r}")
    if meta["kind"] not in KINDS:
        raise FixtureError(f"{where}: unknown kind {meta['kind']!r}")
    if meta["kind"] != "documentation" and not expected:
        raise FixtureError(f"{where}: no expected values")
    try:
        seed = int(meta.get("seed", "0"))
    except ValueError:
        raise FixtureError(f"{where}: seed must be an integer") from None
    qq = meta.get("qq", "false").lower()
    if qq not in ("true", "false"):
        raise FixtureError(f"{where}: qq must be true or false")
    seen = set()
    for e in expected:
        if e.quantity in seen:
            raise FixtureError(f"{where}:{e.line}: quantity {e.quantity!r} listed twice")
        seen.add(e.quantity)
    return Fixture(meta["id"], meta["kind"], "\n".join(body), expected, qq == "true", seed, notes,
                   source)


def _fixture_dir():
    return resources.files("discloci.catalog").joinpath("fixtures")


def fixture_paths() -> dict[str, object]:
    out = {}
    for entry in sorted(_fixture_dir().iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".fix"):
            out[entry.name[:-4]] = entry
    return out


def fixture_ids() -> list[str]:
    return list(fixture_paths())


def load_fixture(ref: str) -> Fixture:
    """Load a fixture by roster id, or from a file path."""
    paths = fixture_paths()
    if ref in paths:
        entry = paths[ref]
        fx = parse_fixture(entry.read_text(), entry.name)
        if fx.id != ref:
            raise FixtureError(f"{entry.name}: id {fx.id!r} does not match the file name")
        return fx
    p = Path(ref)
    if p.is_file():
        return parse_fixture(p.read_text(), str(p))
    raise FixtureError(f"unknown fixture {ref!r}")


def load_all() -> list[Fixture]:
    out = [load_fixture(i) for i in fixture_ids()]
    ids = [f.id for f in out]
    if len(set(ids)) != len(ids):
        raise FixtureError("duplicate fixture ids")
    return out
