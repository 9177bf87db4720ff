"""Corpus handling: ingestion, synthetic generation, error injection.

Real assignment dumps arrive as a directory of source files or a
line-delimited JSON record file; either is accepted.  Only programs that
pass the parser enter a training corpus; the rest are returned as the
natural repair test set.  A seeded generator can synthesize parse-clean
corpora for three assignment families, and a seeded mutator plants
single syntax errors for evaluation.
"""

import json
import random
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .lexer import Token, TokenKind, TokenSeq, detokenize, tokenize
from .parser import parse_check


class IoFailure(OSError):
    pass


class EmptyInput(ValueError):
    pass


class UnknownFamily(ValueError):
    pass


class Unmutatable(ValueError):
    pass


@dataclass
class Corpus:
    programs: list  # (source_id, text) pairs
    provenance: str = "loaded"

    def __len__(self):
        return len(self.programs)

    def texts(self):
        return [text for _, text in self.programs]

    def ids(self):
        return [sid for sid, _ in self.programs]


def load_corpus(path):
    """Read programs and split them on parser validity.

    Returns (training, rejected): a Corpus of parse-clean programs and a
    list of (source_id, ParseOutcome) for the ones that failed.
    """
    programs = _read_programs(Path(path))
    if not programs:
        raise EmptyInput(f"no programs found at {path}")
    seen = set()
    training = []
    rejected = []
    for sid, text in programs:
        if sid in seen:
            raise IoFailure(f"duplicate source id {sid!r}")
        seen.add(sid)
        outcome = parse_check(text)
        if outcome.ok:
            training.append((sid, text))
        else:
            rejected.append((sid, outcome))
    return Corpus(training, "loaded"), rejected


def _read_programs(path: Path):
    if path.is_dir():
        out = []
        for f in sorted(path.iterdir()):
            if f.is_file() and not f.name.startswith("."):
                out.append((f.stem, f.read_text(encoding="utf-8")))
        return out
    if path.is_file():
        out = []
        with path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    out.append((str(rec["id"]), rec["source"]))
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    raise IoFailure(f"{path}:{lineno}: bad record ({exc})")
        return out
    raise IoFailure(f"{path} is neither a file nor a directory")


def split_corpus(corpus: Corpus, n_train: int):
    """Deterministic prefix split; source ids never overlap."""
    if not 0 <= n_train <= len(corpus):
        raise ValueError(f"cannot take {n_train} of {len(corpus)} programs")
    return (Corpus(corpus.programs[:n_train], corpus.provenance),
            Corpus(corpus.programs[n_train:], corpus.provenance))


# -- synthetic corpora -------------------------------------------------------

def _weighted(rng, options):
    total = sum(w for w, _ in options)
    roll = rng.random() * total
    for w, value in options:
        roll -= w
        if roll < 0:
            return value
    return options[-1][1]


def _fn_name(rng, pool):
    name = rng.choice(pool)
    # A thin tail of one-off names keeps the vocabulary realistically
    # heavy-tailed so rare-token relabeling has something to do.
    if rng.random() < 0.04:
        name = f"{name}{rng.randint(2, 99)}"
    return name


def _gen_recur_power(rng) -> str:
    fn = _fn_name(rng, ["recurPower", "recPower", "power", "raisePower", "powRec"])
    base = rng.choice(["base", "b", "x", "num"])
    exp = rng.choice(["exp", "e", "n", "p"])
    op, bound, base_ret = _weighted(rng, [
        (9, ("==", "0", "1")),
        (4, ("<=", "0", "1")),
        (5, ("==", "1", base)),
        (2, ("<", "1", "1")),
    ])
    arg = _weighted(rng, [(7, f"{exp} - 1"), (3, f"({exp} - 1)")])
    call = f"{fn}({base}, {arg})"
    rec = _weighted(rng, [(7, f"{base} * {call}"), (3, f"{call} * {base}")])
    shape = _weighted(rng, [(5, "early"), (5, "else"), (2, "ladder"), (2, "temp")])
    if shape == "early":
        return (f"def {fn}({base}, {exp}):\n"
                f"    if {exp} {op} {bound}:\n"
                f"        return {base_ret}\n"
                f"    return {rec}\n")
    if shape == "else":
        return (f"def {fn}({base}, {exp}):\n"
                f"    if {exp} {op} {bound}:\n"
                f"        return {base_ret}\n"
                f"    else:\n"
                f"        return {rec}\n")
    if shape == "ladder":
        return (f"def {fn}({base}, {exp}):\n"
                f"    if {exp} == 0:\n"
                f"        return 1\n"
                f"    elif {exp} == 1:\n"
                f"        return {base}\n"
                f"    else:\n"
                f"        return {rec}\n")
    acc = rng.choice(["result", "total", "ans"])
    return (f"def {fn}({base}, {exp}):\n"
            f"    if {exp} {op} {bound}:\n"
            f"        return {base_ret}\n"
            f"    {acc} = {rec}\n"
            f"    return {acc}\n")


def _gen_iter_power(rng) -> str:
    fn = _fn_name(rng, ["iterPower", "itPower", "powerLoop", "iterPow"])
    base = rng.choice(["base", "b", "x", "num"])
    exp = rng.choice(["exp", "e", "n", "p"])
    acc = rng.choice(["result", "total", "ans", "prod"])
    mult = _weighted(rng, [(6, f"{acc} = {acc} * {base}"), (4, f"{acc} *= {base}")])
    if _weighted(rng, [(6, "while"), (4, "for")]) == "while":
        cond = _weighted(rng, [(6, f"{exp} > 0"), (2, f"{exp} >= 1"), (2, f"({exp} > 0)")])
        dec = _weighted(rng, [(6, f"{exp} = {exp} - 1"), (4, f"{exp} -= 1")])
        return (f"def {fn}({base}, {exp}):\n"
                f"    {acc} = 1\n"
                f"    while {cond}:\n"
                f"        {mult}\n"
                f"        {dec}\n"
                f"    return {acc}\n")
    var = rng.choice(["i", "j", "count"])
    return (f"def {fn}({base}, {exp}):\n"
            f"    {acc} = 1\n"
            f"    for {var} in range({exp}):\n"
            f"        {mult}\n"
            f"    return {acc}\n")


def _gen_odd_tuples(rng) -> str:
    fn = _fn_name(rng, ["oddTuples", "oddTuple", "everyOther", "altTuple"])
    tup = rng.choice(["aTup", "t", "tup", "data"])
    acc = rng.choice(["result", "out", "newTup"])
    var = rng.choice(["i", "j", "idx"])
    shape = _weighted(rng, [(4, "while"), (3, "for"), (3, "slice")])
    if shape == "slice":
        return (f"def {fn}({tup}):\n"
                f"    return {tup}[::2]\n")
    if shape == "for":
        return (f"def {fn}({tup}):\n"
                f"    {acc} = ()\n"
                f"    for {var} in range(0, len({tup}), 2):\n"
                f"        {acc} = {acc} + ({tup}[{var}],)\n"
                f"    return {acc}\n")
    return (f"def {fn}({tup}):\n"
            f"    {acc} = ()\n"
            f"    {var} = 0\n"
            f"    while {var} < len({tup}):\n"
            f"        {acc} = {acc} + ({tup}[{var}],)\n"
            f"        {var} = {var} + 2\n"
            f"    return {acc}\n")


FAMILIES = {
    "recurPower-like": _gen_recur_power,
    "iterPower-like": _gen_iter_power,
    "oddTuples-like": _gen_odd_tuples,
}


def generate_synthetic(template_family: str, n: int, seed: int) -> Corpus:
    """n parse-clean programs from one template family, deterministically."""
    gen = FAMILIES.get(template_family)
    if gen is None:
        raise UnknownFamily(
            f"unknown family {template_family!r}; know {sorted(FAMILIES)}")
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    programs = []
    for idx in range(n):
        text = gen(rng)
        outcome = parse_check(text)
        assert outcome.ok, f"template produced invalid program: {outcome}\n{text}"
        programs.append((f"{template_family}-{idx:04d}", text))
    return Corpus(programs, "synthetic")


# -- error injection ---------------------------------------------------------

class MutationKind(Enum):
    DELETE_TOKEN = "delete-token"
    DUPLICATE_TOKEN = "duplicate-token"
    SWAP_ADJACENT_OPERATORS = "swap-adjacent-operators"
    EQEQ_TO_EQ = "eqeq-to-eq"
    DROP_CLOSE_PAREN = "drop-close-paren"
    DROP_COLON = "drop-colon"
    MISSPELL_KEYWORD = "misspell-keyword"
    DEDENT_LINE = "dedent-line"
    INDENT_LINE = "indent-line"
    TRUNCATE_EXPRESSION = "truncate-expression"


_MAX_SITE_TRIES = 32


def _misspell(word: str, rng) -> str:
    if len(word) >= 3:
        positions = list(range(1, len(word) - 1))
        rng.shuffle(positions)
        for i in positions:
            cand = word[:i] + word[i + 1] + word[i] + word[i + 2:]
            if cand != word:
                return cand
    return word[1:]  # two-letter keywords lose their first character


def _content(tok: Token) -> bool:
    return tok.kind not in (TokenKind.NEWLINE, TokenKind.INDENT_UNIT)


def _sites(seq: TokenSeq, kind: MutationKind, min_line: int):
    """Candidate token indices for a mutation kind (def header excluded)."""
    toks = seq.tokens
    eligible = lambda t: t.line >= min_line
    if kind is MutationKind.DELETE_TOKEN or kind is MutationKind.DUPLICATE_TOKEN:
        return [i for i, t in enumerate(toks) if eligible(t) and _content(t)]
    if kind is MutationKind.SWAP_ADJACENT_OPERATORS:
        return [i for i in range(len(toks) - 1)
                if eligible(toks[i]) and toks[i].line == toks[i + 1].line
                and _content(toks[i]) and _content(toks[i + 1])
                and (toks[i].kind is TokenKind.OPERATOR
                     or toks[i + 1].kind is TokenKind.OPERATOR)
                and toks[i].lexeme != toks[i + 1].lexeme]
    if kind is MutationKind.EQEQ_TO_EQ:
        return [i for i, t in enumerate(toks) if eligible(t) and t.lexeme == "=="]
    if kind is MutationKind.DROP_CLOSE_PAREN:
        return [i for i, t in enumerate(toks) if eligible(t) and t.lexeme == ")"]
    if kind is MutationKind.DROP_COLON:
        return [i for i, t in enumerate(toks) if eligible(t) and t.lexeme == ":"]
    if kind is MutationKind.MISSPELL_KEYWORD:
        return [i for i, t in enumerate(toks)
                if eligible(t) and t.kind is TokenKind.KEYWORD]
    if kind is MutationKind.DEDENT_LINE:
        return [i for i, t in enumerate(toks)
                if eligible(t) and t.kind is TokenKind.INDENT_UNIT
                and (i == 0 or toks[i - 1].kind is TokenKind.NEWLINE)]
    if kind is MutationKind.INDENT_LINE:
        firsts = []
        line = None
        for i, t in enumerate(toks):
            if t.line != line:
                line = t.line
                if eligible(t) and t.kind is not TokenKind.NEWLINE:
                    firsts.append(i)
        return firsts
    if kind is MutationKind.TRUNCATE_EXPRESSION:
        # index of a line-final content token with >= 3 content tokens on the line
        out = []
        by_line = {}
        for i, t in enumerate(toks):
            if _content(t):
                by_line.setdefault(t.line, []).append(i)
        for line, idxs in by_line.items():
            if len(idxs) >= 3 and eligible(toks[idxs[0]]):
                out.append(idxs[-1])
        return out
    raise ValueError(f"unhandled mutation kind {kind}")


def _apply(seq: TokenSeq, kind: MutationKind, site: int, rng) -> TokenSeq:
    toks = list(seq.tokens)
    if kind in (MutationKind.DELETE_TOKEN, MutationKind.DROP_CLOSE_PAREN,
                MutationKind.DROP_COLON, MutationKind.DEDENT_LINE):
        del toks[site]
    elif kind is MutationKind.DUPLICATE_TOKEN:
        toks.insert(site, toks[site])
    elif kind is MutationKind.SWAP_ADJACENT_OPERATORS:
        toks[site], toks[site + 1] = toks[site + 1], toks[site]
    elif kind is MutationKind.EQEQ_TO_EQ:
        toks[site] = Token(TokenKind.OPERATOR, "=", toks[site].line, toks[site].col)
    elif kind is MutationKind.MISSPELL_KEYWORD:
        old = toks[site]
        toks[site] = Token(TokenKind.IDENT_RAW, _misspell(old.lexeme, rng),
                           old.line, old.col)
    elif kind is MutationKind.INDENT_LINE:
        anchor = toks[site]
        toks.insert(site, Token(TokenKind.INDENT_UNIT, "\t", anchor.line, 0))
    elif kind is MutationKind.TRUNCATE_EXPRESSION:
        cut = rng.randint(1, 2)
        start = site - cut + 1
        del toks[max(start, 0):site + 1]
    return TokenSeq(toks, seq.source_id)


def inject_error(source: str, kind: MutationKind, seed: int,
                 min_line: int = 2) -> str:
    """Plant one syntax error of the given kind into a valid program.

    The edit site is chosen pseudo-randomly from the applicable ones;
    sites are retried until the result actually fails the parser.  The
    first line is off limits by default so an error never lands on the
    def header.  Raises Unmutatable when no site yields a broken program.
    """
    if not parse_check(source).ok:
        raise ValueError("inject_error needs a parse-clean program")
    rng = random.Random(seed)
    seq = tokenize(source)
    sites = _sites(seq, kind, min_line)
    rng.shuffle(sites)
    for site in sites[:_MAX_SITE_TRIES]:
        mutated = _apply(seq, kind, site, rng)
        text = detokenize(mutated)
        if not parse_check(text).ok:
            return text
    raise Unmutatable(f"{kind.value} cannot break this program")


def mutate_corpus(corpus: Corpus, seed: int, kinds=None):
    """One seeded mutation per program; kinds are sampled per program.

    Falls back to other kinds when the sampled one cannot break a
    program.  Returns (source_id, buggy_text, kind) triples.
    """
    kinds = list(kinds) if kinds is not None else list(MutationKind)
    out = []
    for idx, (sid, text) in enumerate(corpus.programs):
        rng = random.Random(seed * 1000003 + idx)
        order = kinds[:]
        rng.shuffle(order)
        for kind in order:
            try:
                buggy = inject_error(text, kind, rng.randrange(2 ** 32))
            except Unmutatable:
                continue
            out.append((sid, buggy, kind))
            break
    return out
