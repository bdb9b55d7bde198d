import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from staride.dsl import ParseError, parse, parse_scenario, print_scenarios
from staride.harness import shipped

HEADER = 'scenario "gen"\nvars y, z\nfamily t\nrule nonneg\n'

mono = st.sampled_from(["1", "y", "z", "y^2*z", "y^-1", "t[1]", "y*t[2]^3", "z^-2*t[4]"])
sel = st.sampled_from(["y", "y, z", "*", "t[*]", "t[<=2]", "y, t[3]"])
STEPS = st.sampled_from(["1", "2: x", r"3: a \"b\""])
status = st.sampled_from(["proved", "proved-within-bounds", "holds", "inconclusive", "refuted"])


@st.composite
def scenario_text(draw):
    lines = [HEADER.rstrip("\n")]
    if draw(st.booleans()):
        lines.append("rule linear: deg(y,z) >= deg(t[*])")
    if draw(st.booleans()):
        lines.append(f"bounds degree {draw(st.integers(1, 9))} window {draw(st.integers(1, 4))}")
    names = []
    for i in range(draw(st.integers(1, 5))):
        kind = draw(st.integers(0, 4))
        if kind == 0 or not names:
            expr = "gens(" + ", ".join(draw(st.lists(mono, min_size=1, max_size=3))) + ")"
        elif kind == 1:
            atoms = draw(st.lists(st.one_of(
                st.builds(lambda s, n: f"deg({s}) >= {n}", sel, st.integers(-2, 3)),
                st.builds(lambda s: f"exists {s}", sel),
                st.builds(lambda m: f"shift {m}", mono),
            ), min_size=1, max_size=3))
            expr = "constraint{" + "; ".join(atoms) + "} & ring"
        elif kind == 2:
            expr = f"(ring : {draw(st.sampled_from(names))})"
        elif kind == 3:
            expr = f"{draw(st.sampled_from(names))} & {draw(st.sampled_from(names + ['ring']))}"
        else:
            expr = f"adjoin({draw(st.sampled_from(names))}, y)"
        cert = " certify t" if draw(st.booleans()) and kind == 1 else ""
        name = f"I{i}"
        lines.append(f"ideal {name} = {expr}{cert}")
        names.append(name)
    for _ in range(draw(st.integers(0, 4))):
        op = draw(st.sampled_from(["divisorial", "prime", "strong", "member", "equal"]))
        a = draw(st.sampled_from(names))
        if op == "member":
            args = f"{a}, {draw(mono)}"
        elif op == "equal":
            args = f"{a}, {draw(st.sampled_from(names))}"
        else:
            args = a
        step = ' step "' + draw(STEPS) + '"' if draw(st.booleans()) else ""
        lines.append(f"assert {op}({args}) is {draw(status)}{step}")
    if draw(st.booleans()):
        lines.append(f"fixture F = {names[0]} expect prime is {draw(status)}, t-maximal is {draw(status)}")
    return "\n".join(lines) + "\n"


@settings(max_examples=150)
@given(scenario_text())
def test_round_trip_generated(text):
    ast = parse(text, "gen.stx")
    printed = print_scenarios(ast)
    assert parse(printed, "printed.stx") == ast
    assert print_scenarios(parse(printed)) == printed


@pytest.mark.parametrize("name", ["ex3_1.stx", "ex3_2.stx", "fixtures.stx"])
def test_round_trip_shipped(name):
    ast = parse(shipped(name), name)
    assert parse(print_scenarios(ast)) == ast


def test_example_3_1_has_three_steps():
    sc = parse_scenario(shipped("ex3_1.stx"), "ex3_1.stx")
    steps = {s.step.split(":")[0] for s in sc.statements if getattr(s, "step", None)}
    assert steps == {"1", "2", "3"}


def _diags(text):
    with pytest.raises(ParseError) as e:
        parse(text, "bad.stx")
    return [str(d) for d in e.value.diagnostics]


def test_unknown_identifier_position():
    d = _diags(HEADER + "ideal A = gens(y)\nassert prime(B) is proved\n")
    assert len(d) == 1 and d[0].startswith("bad.stx:6:") and "unknown identifier" in d[0]


def test_type_mismatch():
    d = _diags(HEADER + "poly f = y + z*X\nideal A = f & ring\n")
    assert "type mismatch" in d[0]


def test_empty_generators():
    assert "empty generator list" in _diags(HEADER + "ideal A = gens()\n")[0]


def test_reserved_names():
    assert "reserved" in _diags(HEADER + "ideal ring = gens(y)\n")[0]


def test_use_before_declaration():
    d = _diags(HEADER + "ideal A = B & ring\nideal B = gens(y)\n")
    assert "unknown identifier 'B'" in d[0]


def test_statement_before_scenario():
    assert "before any 'scenario' header" in _diags("vars y\n")[0]


def test_all_errors_are_collected():
    d = _diags(HEADER + "ideal A = gens()\nideal B = C\nassert nosuch(A) is proved\n")
    assert [x.split(":")[1] for x in d] == ["5", "6", "7"]


def test_bad_monomial_and_status():
    assert _diags(HEADER + "ideal A = gens(w)\n")
    assert _diags(HEADER + "ideal A = gens(y)\nassert prime(A) is maybe\n")
    assert _diags(HEADER + "ideal A = gens(t[0])\n")
