"""Reading and writing the dataset files.

Alphabet files are line oriented::

    # comment
    alphabet "Ukrainian Cyrillic"
    letter А a
      component L x3
      connection C x3
    letter Ї ji
      component L:N
      component P x2 "diaeresis"

Component codes are P (point), L (straight line) and A (arc), optionally
followed by ``:<orientation>``; connection codes are T (continuous),
C (crisp) and X (crossing).  ``xN`` repeats an entry N times.

Mappings, distance matrices, frequency tables and comparison statistics are
CSV files with a header row.  Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import csv
import io
import re
import shlex
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .distinctivity import DistanceMatrix
from .model import (
    Alphabet,
    Component,
    ComponentKind,
    ConnectionKind,
    DataError,
    FrequencyTable,
    GraphemeRepresentation,
    Letter,
    MappingTable,
    Phoneme,
    validate_alphabet,
)


class ParseError(DataError):
    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = None if path is None else str(path)
        self.line = line
        where = ""
        if self.path is not None:
            where = self.path + (f":{line}" if line is not None else "") + ": "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)


COMPONENT_CODES = {"P": ComponentKind.POINT, "L": ComponentKind.LINE, "A": ComponentKind.ARC}
CONNECTION_CODES = {"T": ConnectionKind.CONTINUOUS, "C": ConnectionKind.CRISP, "X": ConnectionKind.CROSSING}
_COMPONENT_LETTER = {v: k for k, v in COMPONENT_CODES.items()}
_CONNECTION_LETTER = {v: k for k, v in CONNECTION_CODES.items()}
_REPEAT = re.compile(r"x([1-9][0-9]*)")


def _read_text(path) -> str:
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParseError("no such file", path) from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"not valid UTF-8 ({exc.reason})", path) from None
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), path) from None


# --- alphabet ----------------------------------------------------------------


def _split_repeat(tokens: list[str], lineno: int, path) -> tuple[list[str], int]:
    count = 1
    rest = []
    for tok in tokens:
        m = _REPEAT.fullmatch(tok)
        if m:
            count = int(m.group(1))
        else:
            rest.append(tok)
    return rest, count


def loads_alphabet(text: str, path=None, validate: bool = True) -> Alphabet:
    name = ""
    letters: list[Letter] = []
    current = None  # [glyph, translit, components, connections]

    def close():
        if current is not None:
            letters.append(Letter(current[0], current[1], tuple(current[2]), tuple(current[3])))

    for lineno, raw in enumerate(text.splitlines(), 1):
        try:
            tokens = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise ParseError(f"cannot tokenize line ({exc})", path, lineno) from None
        if not tokens:
            continue
        head, args = tokens[0], tokens[1:]
        if head == "alphabet":
            if len(args) != 1:
                raise ParseError("expected: alphabet <name>", path, lineno)
            name = args[0]
        elif head == "letter":
            if len(args) != 2:
                raise ParseError("expected: letter <glyph> <transliteration>", path, lineno)
            close()
            current = [args[0].upper(), args[1], [], []]
        elif head in ("component", "connection"):
            if current is None:
                raise ParseError(f"{head} outside of a letter block", path, lineno)
            rest, count = _split_repeat(args, lineno, path)
            if not rest:
                raise ParseError(f"{head} needs a code", path, lineno)
            code, extra = rest[0], rest[1:]
            if head == "component":
                kind_code, _, orientation = code.partition(":")
                if kind_code not in COMPONENT_CODES:
                    raise ParseError(f"unknown component code {kind_code!r} (expected P, L or A)", path, lineno)
                if len(extra) > 1:
                    raise ParseError(f"unexpected tokens after component: {extra[1:]}", path, lineno)
                comp = Component(COMPONENT_CODES[kind_code], orientation or None, extra[0] if extra else None)
                current[2].extend([comp] * count)
            else:
                if code not in CONNECTION_CODES:
                    raise ParseError(f"unknown connection code {code!r} (expected T, C or X)", path, lineno)
                if extra:
                    raise ParseError(f"unexpected tokens after connection: {extra}", path, lineno)
                current[3].extend([CONNECTION_CODES[code]] * count)
        else:
            raise ParseError(f"unknown directive {head!r}", path, lineno)
    close()
    if not letters:
        raise ParseError("no letters", path)
    alphabet = Alphabet(name, tuple(letters))
    if validate:
        problems = validate_alphabet(alphabet)
        if problems:
            raise ParseError("invalid alphabet: " + "; ".join(v.message for v in problems), path)
    return alphabet


def parse_alphabet_file(path) -> Alphabet:
    return loads_alphabet(_read_text(path), path)


def _quote(s: str) -> str:
    return shlex.quote(s) if s else "''"


def _runs(items: Iterable) -> list[tuple[object, int]]:
    out: list[list] = []
    for it in items:
        if out and out[-1][0] == it and getattr(it, "annotation", None) == getattr(out[-1][0], "annotation", None):
            out[-1][1] += 1
        else:
            out.append([it, 1])
    return [(a, b) for a, b in out]


def dumps_alphabet(alphabet: Alphabet) -> str:
    lines = []
    if alphabet.name:
        lines.append(f"alphabet {_quote(alphabet.name)}")
    for letter in alphabet:
        lines.append(f"letter {_quote(letter.glyph)} {_quote(letter.transliteration)}")
        for comp, n in _runs(letter.components):
            code = _COMPONENT_LETTER[comp.kind] + (f":{comp.orientation}" if comp.orientation else "")
            parts = ["  component", code]
            if n > 1:
                parts.append(f"x{n}")
            if comp.annotation:
                parts.append(_quote(comp.annotation))
            lines.append(" ".join(parts))
        for conn, n in _runs(letter.connections):
            lines.append(f"  connection {_CONNECTION_LETTER[conn]}" + (f" x{n}" if n > 1 else ""))
    return "\n".join(lines) + "\n"


# --- CSV helpers ---------------------------------------------------------------


def _csv_rows(text: str, path, header: list[str] | None = None):
    """Yield ``(lineno, row)`` for data lines; checks the header if given."""
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        row = next(csv.reader([raw]))
        if not seen_header:
            seen_header = True
            if header is not None and [c.strip() for c in row] != header:
                raise ParseError(f"expected header {','.join(header)}, got {raw.strip()}", path, lineno)
            yield lineno, None, row
            continue
        yield lineno, row, None


def _write_csv(rows, quoting=csv.QUOTE_MINIMAL) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n", quoting=quoting)
    w.writerows(rows)
    return buf.getvalue()


# --- mapping -------------------------------------------------------------------

MAPPING_HEADER = ["phoneme", "category", "palatalization", "graphemes", "context", "example"]


def loads_mapping(text: str, path=None) -> MappingTable:
    entries: list[tuple[Phoneme, list[GraphemeRepresentation]]] = []
    closed = set()
    saw_header = False
    for lineno, row, header in _csv_rows(text, path, MAPPING_HEADER):
        if header is not None:
            saw_header = True
            continue
        if len(row) != len(MAPPING_HEADER):
            raise ParseError(f"expected {len(MAPPING_HEADER)} fields, got {len(row)}", path, lineno)
        ipa, category, pal, graphemes, context, example = row
        try:
            phoneme = Phoneme(ipa, category, pal)
        except DataError as exc:
            raise ParseError(str(exc), path, lineno) from None
        if entries and entries[-1][0].ipa == ipa:
            if entries[-1][0] != phoneme:
                raise ParseError(f"phoneme /{ipa}/ changes category or palatalization", path, lineno)
        else:
            if ipa in closed:
                raise ParseError(f"duplicate phoneme /{ipa}/", path, lineno)
            if entries:
                closed.add(entries[-1][0].ipa)
            entries.append((phoneme, []))
        if not graphemes:
            if entries[-1][1]:
                raise ParseError(f"empty graphemes field for /{ipa}/", path, lineno)
            continue  # phoneme declared; must be followed by representations
        reps = entries[-1][1]
        if any(r.graphemes == graphemes for r in reps):
            raise ParseError(f"duplicate representation <{graphemes}> for /{ipa}/", path, lineno)
        reps.append(GraphemeRepresentation(graphemes, context, example))
    if not saw_header:
        raise ParseError("empty mapping file", path)
    for ph, reps in entries:
        if not reps:
            raise ParseError(f"phoneme /{ph.ipa}/ has no graphemic representation", path)
    if not entries:
        raise ParseError("empty mapping table", path)
    return MappingTable(tuple((ph, tuple(reps)) for ph, reps in entries))


def parse_mapping_file(path) -> MappingTable:
    return loads_mapping(_read_text(path), path)


def dumps_mapping(mapping: MappingTable) -> str:
    rows = [MAPPING_HEADER]
    for ph, reps in mapping.phonemes:
        for r in reps:
            rows.append([ph.ipa, ph.category, ph.palatalization, r.graphemes, r.context, r.example])
    return _write_csv(rows, csv.QUOTE_ALL)


# --- distance matrix ---------------------------------------------------------------


def loads_matrix(text: str, path=None) -> DistanceMatrix:
    labels: list[str] = []
    rows: list[list[int]] = []
    row_labels: list[str] = []
    for lineno, row, header in _csv_rows(text, path):
        if header is not None:
            labels = [c.strip() for c in header[1:]]
            if not labels:
                raise ParseError("matrix header has no labels", path, lineno)
            continue
        if len(row) != len(labels) + 1:
            raise ParseError(f"non-square matrix: row has {len(row) - 1} values, header has {len(labels)} labels",
                             path, lineno)
        label = row[0].strip()
        expected = labels[len(rows)] if len(rows) < len(labels) else None
        if label != expected:
            raise ParseError(f"row label {label!r} does not match column order (expected {expected!r})", path, lineno)
        try:
            rows.append([int(c) for c in row[1:]])
        except ValueError:
            raise ParseError("matrix cells must be integers", path, lineno) from None
        row_labels.append(label)
    if not labels:
        raise ParseError("empty matrix file", path)
    if len(rows) != len(labels):
        raise ParseError(f"non-square matrix: {len(rows)} rows for {len(labels)} columns", path)
    try:
        return DistanceMatrix(tuple(labels), tuple(tuple(r) for r in rows))
    except DataError as exc:
        raise ParseError(str(exc), path) from None


def parse_matrix_file(path) -> DistanceMatrix:
    return loads_matrix(_read_text(path), path)


def dumps_matrix(matrix: DistanceMatrix) -> str:
    rows = [[""] + list(matrix.labels)]
    rows += [[label] + list(vals) for label, vals in zip(matrix.labels, matrix.values)]
    return _write_csv(rows)


# --- frequency tables and comparison statistics ---------------------------------------

FREQUENCY_HEADER = ["x", "f"]
COMPARISON_HEADER = ["label", "U_bar", "V"]


def loads_frequency(text: str, path=None) -> FrequencyTable:
    pairs = []
    for lineno, row, header in _csv_rows(text, path, FREQUENCY_HEADER):
        if header is not None:
            continue
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", path, lineno)
        try:
            pairs.append((int(row[0]), int(row[1])))
        except ValueError:
            raise ParseError("x and f must be integers", path, lineno) from None
    try:
        table = FrequencyTable(pairs)
    except DataError as exc:
        raise ParseError(str(exc), path) from None
    if table.n < 1:
        raise ParseError("frequency table is empty", path)
    return table


def parse_frequency_file(path) -> FrequencyTable:
    return loads_frequency(_read_text(path), path)


def dumps_frequency(table: FrequencyTable) -> str:
    return _write_csv([FREQUENCY_HEADER] + [[x, f] for x, f in table.items()])


def loads_comparison(text: str, path=None) -> list[tuple[str, float, float]]:
    out = []
    for lineno, row, header in _csv_rows(text, path, COMPARISON_HEADER):
        if header is not None:
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", path, lineno)
        try:
            u, v = float(row[1]), float(row[2])
        except ValueError:
            raise ParseError("U_bar and V must be numbers", path, lineno) from None
        if not v > 0:
            raise ParseError(f"variance for {row[0]!r} must be positive", path, lineno)
        out.append((row[0], u, v))
    return out


def parse_comparison_file(path) -> list[tuple[str, float, float]]:
    return loads_comparison(_read_text(path), path)


def dumps_comparison(rows) -> str:
    return _write_csv([COMPARISON_HEADER] + [[label, repr(float(u)), repr(float(v))] for label, u, v in rows])


# --- bundles -------------------------------------------------------------------------------


@dataclass(frozen=True)
class DatasetBundle:
    root: Path
    alphabet: Alphabet
    mapping: MappingTable
    matrix: DistanceMatrix
    comparison: list
    connections: FrequencyTable | None
    components: FrequencyTable | None


def _one(root: Path, pattern: str, required: bool = True) -> Path | None:
    found = sorted(root.glob(pattern))
    if len(found) > 1:
        raise ParseError(f"several files match {pattern}: {', '.join(p.name for p in found)}", root)
    if not found:
        if required:
            raise ParseError(f"no file matching {pattern}", root)
        return None
    return found[0]


def load_bundle(root) -> DatasetBundle:
    """Load every dataset file from a bundle directory."""
    root = Path(root)
    if not root.is_dir():
        raise ParseError("bundle directory does not exist", root)
    conn = _one(root, "*_connections.csv", required=False)
    comp = _one(root, "*_components.csv", required=False)
    cmp_path = _one(root, "*_comparison.csv", required=False)
    return DatasetBundle(
        root=root,
        alphabet=parse_alphabet_file(_one(root, "*.alphabet")),
        mapping=parse_mapping_file(_one(root, "*_mapping.csv")),
        matrix=parse_matrix_file(_one(root, "*_distances.csv")),
        comparison=parse_comparison_file(cmp_path) if cmp_path else [],
        connections=parse_frequency_file(conn) if conn else None,
        components=parse_frequency_file(comp) if comp else None,
    )


def bundled_data_dir() -> Path:
    """Directory of the Ukrainian reference bundle shipped with the package."""
    return Path(__file__).parent / "data" / "uk"
