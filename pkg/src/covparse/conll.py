"""Reading and writing ten-column CoNLL-X treebank files.

The reader also swallows the extras a CoNLL-U file may carry: comment
lines, multiword ranges and decimal ids are skipped, and the UPOS/XPOS
columns simply land in the coarse/fine tag slots. Valid CoNLL-X input
contains none of those, so its handling is unchanged.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from importlib.resources import files

from .core import Sentence, Token

N_FIELDS = 10
ABSENT = "_"


class ConllError(ValueError):
    pass


@dataclass
class CorpusDocument:
    sentences: list = field(default_factory=list)
    source_name: str = "<stream>"

    def __post_init__(self):
        for i, sent in enumerate(self.sentences):
            if len(sent) == 0:
                raise ConllError(f"{self.source_name}: sentence {i + 1} is empty")

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)


def _report_to_stderr(message):
    print(message, file=sys.stderr)


def read_conllx(stream, strict=True, source_name="<stream>", on_skip=None):
    """Parse a CoNLL-X character stream into a CorpusDocument.

    Broken lines (wrong field count, bad integers, non-contiguous ids)
    always raise ConllError with their line number. Sentences whose gold
    heads do not form a forest rooted at 0 raise in strict mode; otherwise
    they are skipped and reported through on_skip (stderr by default).
    """
    if on_skip is None:
        on_skip = _report_to_stderr
    sentences = []
    pending = []  # (line_no, fields) for the sentence being collected

    def flush():
        if not pending:
            return
        tokens = [
            _token_from_fields(fields, idx + 1, line_no, source_name)
            for idx, (line_no, fields) in enumerate(pending)
        ]
        try:
            sentence = Sentence(tokens)
        except ValueError as exc:
            message = f"{source_name}: sentence starting at line {pending[0][0]}: {exc}"
            if strict:
                raise ConllError(message) from exc
            on_skip(f"skipping sentence: {message}")
        else:
            sentences.append(sentence)
        pending.clear()

    for line_no, raw in enumerate(stream, start=1):
        line = raw.rstrip("\r\n")
        if line_no == 1:
            line = line.lstrip("﻿")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != N_FIELDS:
            raise ConllError(
                f"{source_name}: line {line_no}: expected {N_FIELDS} tab-separated "
                f"fields, found {len(fields)}"
            )
        if not fields[0].isdigit():
            if _is_conllu_extra(fields[0]):
                continue
            raise ConllError(
                f"{source_name}: line {line_no}: id {fields[0]!r} is not an integer"
            )
        pending.append((line_no, fields))
    flush()
    return CorpusDocument(sentences, source_name)


def _is_conllu_extra(id_field):
    # "3-4" multiword ranges and "5.1" empty nodes
    for sep in ("-", "."):
        parts = id_field.split(sep)
        if len(parts) == 2 and all(p.isdigit() for p in parts):
            return True
    return False


def _token_from_fields(fields, expected_id, line_no, source_name):
    tid = int(fields[0])
    if tid != expected_id:
        raise ConllError(
            f"{source_name}: line {line_no}: token id {tid} breaks the 1..n numbering"
        )
    head_txt = fields[6]
    head = None
    if head_txt != ABSENT:
        try:
            head = int(head_txt)
        except ValueError:
            raise ConllError(
                f"{source_name}: line {line_no}: head {head_txt!r} is not an integer"
            ) from None
    deprel = fields[7]
    label = None if deprel == ABSENT else deprel
    try:
        return Token(
            tid,
            fields[1],
            _blank(fields[2]),
            _blank(fields[3]),
            _blank(fields[4]),
            _blank(fields[5]),
            head,
            label,
        )
    except ValueError as exc:
        raise ConllError(f"{source_name}: line {line_no}: {exc}") from exc


def _blank(text):
    return "" if text == ABSENT else text


def read_conllx_file(path, strict=True, on_skip=None):
    with open(path, "r", encoding="utf-8") as stream:
        return read_conllx(stream, strict=strict, source_name=str(path), on_skip=on_skip)


def read_bundled(name, strict=True):
    """Read one of the corpora shipped inside the package."""
    resource = files("covparse").joinpath("data", name)
    with resource.open("r", encoding="utf-8") as stream:
        return read_conllx(stream, strict=strict, source_name=name)


def write_conllx(doc, predicted, out):
    """Write doc with HEAD/DEPREL taken from the predicted arc sets.

    All other columns are echoed from the input (empty -> "_"); PHEAD and
    PDEPREL are always written as "_". One blank line follows each sentence.
    """
    if len(predicted) != len(doc.sentences):
        raise ValueError(
            f"{len(predicted)} arc sets for {len(doc.sentences)} sentences"
        )
    for s_idx, (sentence, arcs) in enumerate(zip(doc.sentences, predicted)):
        for tok in sentence:
            entry = arcs.head_of(tok.id)
            if entry is None:
                raise ValueError(
                    f"sentence {s_idx + 1}: node {tok.id} has no head; "
                    "the arc set is not a rooted tree"
                )
            head, label = entry
            if any(ch.isspace() for ch in label):
                raise ConllError(
                    f"sentence {s_idx + 1}: label {label!r} contains whitespace"
                )
            out.write(
                "\t".join(
                    (
                        str(tok.id),
                        tok.form if tok.form else ABSENT,
                        tok.lemma if tok.lemma else ABSENT,
                        tok.cpos if tok.cpos else ABSENT,
                        tok.pos if tok.pos else ABSENT,
                        tok.feats if tok.feats else ABSENT,
                        str(head),
                        label if label else ABSENT,
                        ABSENT,
                        ABSENT,
                    )
                )
                + "\n"
            )
        out.write("\n")
