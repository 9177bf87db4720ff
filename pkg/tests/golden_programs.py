"""Hand-written parser fixtures.

VALID holds programs that must parse clean; INVALID holds programs with
the expected kind and line of their first error.  Several reproduce the
published student-submission examples; the rest cover template variants
and each statement form of the grammar.
"""

VALID = [
    # recursive-power family
    ("recur_early_return",
     "def recPower(base, exp):\n"
     "    if exp <= 0:\n"
     "        return 1\n"
     "    return base * recPower(base, exp - 1)\n"),
    ("recur_if_else",
     "def recPower(base, exp):\n"
     "    if exp > 1:\n"
     "        return base * recurPower(base, exp-1)\n"
     "    else:\n"
     "        return 1\n"),
    ("recur_eq_zero",
     "def recurPower(base, exp):\n"
     "    if exp == 0:\n"
     "        return 1\n"
     "    return base * recurPower(base,exp-1)\n"),
    ("recur_total_augmented",
     "def recurPower(base, exp):\n"
     "    total = base\n"
     "    if(exp==0):\n"
     "        return total\n"
     "    else:\n"
     "        total*=base\n"
     "        return total+recurPower(base,exp-11)\n"),
    ("recur_semicolon_body",
     "def recurPower(base, exp):\n"
     "    if exp == 0:\n"
     "      return 1;\n"
     "    else:\n"
     "      return base*recurPower(base,exp-1)\n"),
    ("recur_return_base",
     "def recurPower(base, exp):\n"
     "    if exp == 1:\n"
     "      return base;\n"
     "    else:\n"
     "      return base*recurPower(base,exp-1)\n"),
    ("recur_power_operator",
     "def recurPower(base, exp):\n"
     "    if exp == 0:\n"
     "        return 1\n"
     "    else:\n"
     "        return base * base**(exp-1)\n"),
    ("recur_base_case_one",
     "def recurPower(base, exp):\n"
     "    if exp == 0:\n"
     "        return base\n"
     "    return base * recurPower(base, exp-1)\n"),
    ("recur_elif_ladder",
     "def recurPower(base, exp):\n"
     "    if exp == 0:\n"
     "        return 0\n"
     "    elif exp == 1:\n"
     "        return base\n"
     "    else:\n"
     "        return base*recurPower(base,exp-1)\n"),
    ("recur_paren_arg",
     "def recurPower(base, exp):\n"
     "    if exp == 1:\n"
     "        return base\n"
     "    return base * recurPower(base, (exp - 1))\n"),
    # iterative-power family
    ("iter_while",
     "def iterPower(base, exp):\n"
     "    result = 1\n"
     "    while exp > 0:\n"
     "        result = result * base\n"
     "        exp = exp - 1\n"
     "    return result\n"),
    ("iter_while_augmented",
     "def iterPower(base, exp):\n"
     "    result = 1\n"
     "    while(exp > 0):\n"
     "        result *= base\n"
     "        exp -= 1\n"
     "    return result\n"),
    ("iter_for_range",
     "def iterPower(base, exp):\n"
     "    total = 1\n"
     "    for i in range(exp):\n"
     "        total = total * base\n"
     "    return total\n"),
    ("iter_nested_if",
     "def iterPower(base, exp):\n"
     "    result = 1\n"
     "    while exp > 0:\n"
     "        if exp % 2 == 0:\n"
     "            result = result * base * base\n"
     "            exp = exp - 2\n"
     "        else:\n"
     "            result = result * base\n"
     "            exp = exp - 1\n"
     "    return result\n"),
    # odd-tuples family
    ("odd_slice",
     "def oddTuples(aTup):\n"
     "    return aTup[::2]\n"),
    ("odd_while",
     "def oddTuples(aTup):\n"
     "    result = ()\n"
     "    i = 0\n"
     "    while i < len(aTup):\n"
     "        result = result + (aTup[i],)\n"
     "        i = i + 2\n"
     "    return result\n"),
    ("odd_for_step",
     "def oddTuples(t):\n"
     "    out = ()\n"
     "    for i in range(0, len(t), 2):\n"
     "        out = out + (t[i],)\n"
     "    return out\n"),
    ("odd_slice_bounds",
     "def everyOther(t):\n"
     "    return t[0:len(t):2]\n"),
    # polynomial family
    ("eval_poly",
     "def evalPoly(poly, x):\n"
     "    total = 0.0\n"
     "    for i in range(len(poly)):\n"
     "        total += poly[i] * x ** i\n"
     "    return total\n"),
    ("comp_deriv",
     "def compDeriv(poly):\n"
     "    deriv = []\n"
     "    for i in range(1, len(poly)):\n"
     "        deriv = deriv + [poly[i] * i]\n"
     "    return deriv\n"),
    # grammar coverage
    ("pass_body",
     "def noop(x):\n"
     "    pass\n"),
    ("semicolon_chain",
     "x = 1; y = 2; z = x + y\n"),
    ("tuple_assignment",
     "a, b = 1, 2\n"
     "a = b\n"),
    ("chained_comparison",
     "def inRange(x):\n"
     "    if 0 <= x <= 10:\n"
     "        return 1\n"
     "    return 0\n"),
    ("boolean_operators",
     "def check(x, y, z):\n"
     "    if x > 0 and y > 0 or not z:\n"
     "        return 1\n"
     "    return 0\n"),
    ("string_literals",
     "greeting = 'hello'\n"
     "name = \"world\"\n"
     "both = greeting + \" \" + name\n"),
    ("float_literals",
     "y = 1.5e3 + .5 + 2.\n"),
    ("unary_and_power",
     "def f(x):\n"
     "    return -x ** 2 + (-1)\n"),
    ("comments_and_blanks",
     "# leading comment\n"
     "\n"
     "def f(x):\n"
     "    # body comment\n"
     "\n"
     "    return x  # trailing\n"),
    ("chained_assignment",
     "def f(x):\n"
     "    a = b = x\n"
     "    return a + b\n"),
]

# (name, source, expected kind name, expected 1-based line)
INVALID = [
    ("eq_instead_of_eqeq",
     "def recurPower(base, exp):\n"
     "    if exp = 0:\n"
     "      return 1;\n"
     "    else:\n"
     "      return base*recurPower(base,exp-1)\n",
     "SyntaxError", 2),
    ("misspelled_return",
     "def recurPower(base, exp):\n"
     "    if exp == 1:\n"
     "      retrun exp;\n"
     "    else:\n"
     "      return base*recurPower(base,exp-1)\n",
     "SyntaxError", 3),
    ("under_indented_if_body",
     "def recurPower(base, exp):\n"
     "    if exp == 0:\n"
     "    return 1\n"
     "    else:\n"
     "    return base * base**(exp-1)\n",
     "IndentationError", 3),
    ("missing_close_paren",
     "def recPower(base, exp):\n"
     "    if exp <= 0:\n"
     "        return 1\n"
     "    return base * recPower(base, exp - 1\n",
     "SyntaxError", 4),
    ("missing_colon_after_else",
     "def recPower(base, exp):\n"
     "    if exp > 1:\n"
     "        return base * recurPower(base, exp-1)\n"
     "    else\n"
     "        return 1\n",
     "SyntaxError", 4),
    ("assign_in_return_expr",
     "def recurPower(base, exp):\n"
     "    if exp == 0:\n"
     "        return 1\n"
     "    return base = recurPower(base,exp-1)\n",
     "SyntaxError", 4),
    ("augmented_assign_in_call",
     "def recurPower(base, exp):\n"
     "    total = base\n"
     "    return total + recurPower(base, exp -= 1)\n",
     "SyntaxError", 3),
    ("missing_colon_after_if",
     "def f(x):\n"
     "    if x == 0\n"
     "        return 1\n"
     "    return x\n",
     "SyntaxError", 2),
    ("def_missing_open_paren",
     "def f x):\n"
     "    return x\n",
     "SyntaxError", 1),
    ("unexpected_indent_mid_block",
     "def f(x):\n"
     "    y = 1\n"
     "        z = 2\n"
     "    return y\n",
     "IndentationError", 3),
    ("over_indented_body",
     "def f(x):\n"
     "        return x\n",
     "IndentationError", 2),
    ("missing_body_at_eof",
     "def f(x):\n",
     "IndentationError", 1),
    ("orphan_else",
     "x = 1\n"
     "else:\n"
     "    y = 2\n",
     "SyntaxError", 2),
    ("orphan_elif",
     "def f(x):\n"
     "    y = 1\n"
     "    elif x > 0:\n"
     "        return y\n",
     "SyntaxError", 3),
    ("unterminated_string",
     "x = \"abc\n",
     "SyntaxError", 1),
    ("double_dotted_number",
     "x = 1.2.3\n",
     "SyntaxError", 1),
    ("non_ascii_identifier",
     "caf\u00e9 = 1\n",
     "SyntaxError", 1),
    ("return_close_paren",
     "def f(x):\n"
     "    return )\n",
     "SyntaxError", 2),
    ("for_missing_in",
     "def f(n):\n"
     "    for i range(n):\n"
     "        pass\n",
     "SyntaxError", 2),
    ("while_missing_condition",
     "def f(x):\n"
     "    while :\n"
     "        pass\n",
     "SyntaxError", 2),
    ("doubled_operator",
     "def f(x):\n"
     "    return 1 + * 2\n",
     "SyntaxError", 2),
    ("extra_close_paren",
     "def f(x):\n"
     "    return (x))\n",
     "SyntaxError", 2),
    ("param_list_stray_colon",
     "def f(a,:)\n"
     "    return a\n",
     "SyntaxError", 1),
    ("keyword_parameter",
     "def f(return):\n"
     "    return 1\n",
     "SyntaxError", 1),
    ("assign_to_literal",
     "def f(x):\n"
     "    1 = x\n"
     "    return 1\n",
     "SyntaxError", 2),
    ("augmented_assign_to_expr",
     "def f(x, y):\n"
     "    x + y += 1\n"
     "    return x\n",
     "SyntaxError", 2),
    ("unclosed_subscript",
     "def f(t):\n"
     "    return t[1\n",
     "SyntaxError", 2),
    ("missing_if_body_same_indent",
     "def recurPower(base, exp):\n"
     "    if exp == 0:\n"
     "    return 1\n"
     "    return base * recurPower(base,exp-1)\n",
     "IndentationError", 3),
    ("bare_augmented_assignment",
     "def iterPower(base, exp):\n"
     "    x = base\n"
     "    while exp > 0:\n"
     "        x *= base\n"
     "        -= 1\n"
     "    return base\n",
     "SyntaxError", 5),
    ("assign_to_return_keyword",
     "def recurPower(base, exp):\n"
     "    if exp == 0:\n"
     "        return = exp + 1\n"
     "    else:\n"
     "        return base*recurPower(base,exp-1)\n",
     "SyntaxError", 3),
]
