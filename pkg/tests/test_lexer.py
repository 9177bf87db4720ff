import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synfix.lexer import (INDENT_MARK, NEWLINE_MARK, Token, TokenKind,
                          UnsupportedCharacter, detokenize, token_from_lexeme,
                          token_index_at, tokenize)


def lexemes(seq):
    return [t.lexeme for t in seq]


def kinds_and_lexemes(seq):
    return [(t.kind, t.lexeme) for t in seq]


def test_worked_example_prefix():
    seq = tokenize("def recurPower(base, exp):\n\tif exp")
    assert lexemes(seq) == ["def", "recurPower", "(", "base", ",", "exp", ")",
                            ":", NEWLINE_MARK, INDENT_MARK, "if", "exp",
                            NEWLINE_MARK]


def test_empty_input():
    assert tokenize("").tokens == []


def test_four_spaces_are_one_indent_unit():
    seq = tokenize("x = 1\n    y = 2\n")
    assert lexemes(seq) == ["x", "=", "1", NEWLINE_MARK, INDENT_MARK,
                            "y", "=", "2", NEWLINE_MARK]


@pytest.mark.parametrize("ws,units", [
    ("\t", 1), ("    ", 1), ("  ", 1), ("     ", 2), ("        ", 2),
    ("\t\t", 2), ("\t  ", 2), ("    \t", 2),
])
def test_indent_normalization(ws, units):
    seq = tokenize(ws + "x\n")
    assert lexemes(seq)[:units] == [INDENT_MARK] * units
    assert seq[units].lexeme == "x"


def test_crlf_and_cr_collapse_to_one_newline_kind():
    for text in ("a\r\nb\r\n", "a\rb\r", "a\nb\n"):
        seq = tokenize(text)
        assert lexemes(seq) == ["a", NEWLINE_MARK, "b", NEWLINE_MARK]


def test_newline_count_matches_line_count():
    text = "a = 1\n\nb = 2\nc = 3"
    seq = tokenize(text)
    newlines = sum(t.kind is TokenKind.NEWLINE for t in seq)
    assert newlines == 4  # implicit final newline counts


def test_comments_stripped():
    seq = tokenize("x = 1  # set x\n# whole-line comment\ny = 2\n")
    assert lexemes(seq) == ["x", "=", "1", NEWLINE_MARK, NEWLINE_MARK,
                            "y", "=", "2", NEWLINE_MARK]


def test_string_tokens_keep_quotes():
    seq = tokenize("s = 'a b' + \"c#d\"\n")
    assert lexemes(seq) == ["s", "=", "'a b'", "+", '"c#d"', NEWLINE_MARK]
    assert seq[2].kind is TokenKind.STRING


def test_unterminated_string_still_tokenizes():
    seq = tokenize('x = "abc\n')
    assert lexemes(seq) == ["x", "=", '"abc', NEWLINE_MARK]


def test_unsupported_character_location():
    with pytest.raises(UnsupportedCharacter) as exc:
        tokenize("x = café\n")
    assert (exc.value.line, exc.value.col) == (1, 8)


def test_non_ascii_inside_string_is_fine():
    seq = tokenize("x = 'café'\n")
    assert seq[2].lexeme == "'café'"


def test_multichar_operators_maximal_munch():
    seq = tokenize("a==b!=c<=d>=e**f+=g\n")
    ops = [t.lexeme for t in seq if t.kind is TokenKind.OPERATOR]
    assert ops == ["==", "!=", "<=", ">=", "**", "+="]


def test_positions_strictly_increase():
    seq = tokenize("def f(x):\n    return x + 1\n")
    positions = [(t.line, t.col) for t in seq]
    assert positions == sorted(set(positions))


# -- detokenize ------------------------------------------------------------

def test_detokenize_examples():
    assert detokenize(tokenize("return 1\n")) == "return 1\n"
    assert detokenize(tokenize("")) == ""
    rendered = detokenize(tokenize("exp - 1"))
    assert lexemes(tokenize(rendered))[:3] == ["exp", "-", "1"]


def test_detokenize_separates_gluable_tokens():
    seq = tokenize("if exp == 0:\n")
    spliced = list(seq.tokens)
    spliced.insert(2, token_from_lexeme("=="))  # 'exp' '==' '==' '0'
    from synfix.lexer import TokenSeq
    text = detokenize(TokenSeq(spliced))
    assert lexemes(tokenize(text)) == ["if", "exp", "==", "==", "0", ":",
                                       NEWLINE_MARK]


@pytest.mark.parametrize("src", [
    "def recurPower(base, exp):\n    if exp == 0:\n        return 1\n",
    "x=1;y=2\n",
    "t[::2]\n",
    "a = -1 ** 2\n",
    "while(exp > 0):\n\texp -= 1\n",
])
def test_roundtrip_fixed_programs(src):
    seq = tokenize(src)
    assert kinds_and_lexemes(tokenize(detokenize(seq))) == kinds_and_lexemes(seq)


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126),
               max_size=120))
def test_tokenize_total_and_roundtrips_on_ascii(text):
    seq = tokenize(text)  # must never raise on printable ASCII
    again = tokenize(detokenize(seq))
    assert kinds_and_lexemes(again) == kinds_and_lexemes(seq)


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126) |
               st.sampled_from("\n\t"), max_size=200))
def test_newline_accounting_property(text):
    seq = tokenize(text)
    newlines = sum(t.kind is TokenKind.NEWLINE for t in seq)
    stripped = text.split("\n")
    expected = len(stripped) if stripped[-1] != "" else len(stripped) - 1
    assert newlines == expected


# -- token_index_at ----------------------------------------------------------

def test_token_index_at_error_token():
    src = ("def recurPower(base, exp):\n"
           "    if exp = 0:\n"
           "      return 1;\n")
    seq = tokenize(src)
    eq = next(i for i, t in enumerate(seq) if t.lexeme == "=")
    assert token_index_at(seq, seq[eq].line, seq[eq].col) == eq


def test_token_index_at_origin_and_past_end():
    seq = tokenize("a = b\nc = d\nx = y\n")
    assert token_index_at(seq, 1, 1) == 0
    assert token_index_at(seq, 99, 1) == len(seq)


def test_token_index_at_between_tokens():
    seq = tokenize("ab cd\n")
    # position inside the gap resolves to the next token
    assert token_index_at(seq, 1, 3) == 1
    assert seq[1].lexeme == "cd"


def test_token_from_lexeme_kinds():
    assert token_from_lexeme("def").kind is TokenKind.KEYWORD
    assert token_from_lexeme("exp").kind is TokenKind.IDENT_RAW
    assert token_from_lexeme("42").kind is TokenKind.NUMBER
    assert token_from_lexeme("'s'").kind is TokenKind.STRING
    assert token_from_lexeme("==").kind is TokenKind.OPERATOR
    assert token_from_lexeme("(").kind is TokenKind.DELIMITER
    assert token_from_lexeme(NEWLINE_MARK).kind is TokenKind.NEWLINE
    assert token_from_lexeme(INDENT_MARK).kind is TokenKind.INDENT_UNIT
