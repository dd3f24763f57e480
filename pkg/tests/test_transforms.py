import pytest

from attacks.evaluator import evaluate_program
from attacks.specs import (
    ALL_KINDS, MIN_LEVEL, SIGNATURE_CYCLES, AttackKind, AttackSpec, signature_kind,
)
from attacks.transforms import AST_ATTACKS, apply_attack, negate, run_attack, statement_lists
from common.frontend.syntax import Binary, IntLit, Name, Unary, VarDecl, While, For, DoWhile, If
from common.lowering.compiler import compile_program
from common.utils.errors import NotApplicable

from tests.conftest import unit


PROGRAM = """
int limit = 3;

fn square(int v): int {
    int r = v * v;
    return r;
}

fn main() {
    int scale = 2;
    int total = 0;
    int i = 0;
    while (i < 4) {
        int w = scale * 3;
        total += w + i;
        i = i + 1;
    }
    int sq = square(total);
    if (total > 10) {
        print(sq);
    } else {
        print(0);
    }
    switch (i) {
        case 4: print("four");
        default: print("other");
    }
    print(total + limit);
}
"""

EXPECTED = ("900", "four", "33")


def attacked(kind: str, seed: int = 1, text: str = PROGRAM):
    return apply_attack(unit(text), AttackSpec(MIN_LEVEL[kind], kind, seed))


# ============================================================================
# Specs
# ============================================================================

def test_spec_validation():
    AttackSpec(5, AttackKind.RENAME_LOCALS, 0)
    with pytest.raises(ValueError):
        AttackSpec(1, AttackKind.RENAME_LOCALS, 0)
    with pytest.raises(ValueError):
        AttackSpec(7, AttackKind.RENAME_LOCALS, 0)
    with pytest.raises(ValueError):
        AttackSpec(3, "shuffle", 0)


def test_spec_dict_round_trip_keeps_target():
    spec = AttackSpec(3, AttackKind.RELOCATE_DECL_TO_GLOBAL, 42).with_target("main:scale")
    data = spec.to_dict()
    assert data["min_level"] == 3
    assert AttackSpec.from_dict(data).target == "main:scale"


def test_signature_cycles_use_their_own_level():
    for level, cycle in SIGNATURE_CYCLES.items():
        for kind in cycle:
            assert MIN_LEVEL[kind] == level
    assert signature_kind(5, 0) == AttackKind.WHILE_TO_FOR
    assert signature_kind(1, 3) == AttackKind.WHITESPACE_REFLOW


def test_every_kind_has_an_implementation():
    lexical = {AttackKind.COMMENT_STRIP, AttackKind.WHITESPACE_REFLOW, AttackKind.LOGIC_REWRITE}
    assert set(ALL_KINDS) == set(AST_ATTACKS) | lexical


# ============================================================================
# Preservação semântica
# ============================================================================

def test_program_baseline():
    assert evaluate_program(unit(PROGRAM), ()) == EXPECTED


@pytest.mark.parametrize("kind", [k for k in ALL_KINDS if k != AttackKind.LOGIC_REWRITE])
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_attacks_preserve_behaviour(kind, seed):
    result = attacked(kind, seed)
    compile_program(result.ast)
    assert evaluate_program(result, ()) == EXPECTED


@pytest.mark.parametrize("kind", sorted(AST_ATTACKS))
def test_attacks_are_deterministic(kind):
    assert attacked(kind, 9).text == attacked(kind, 9).text


@pytest.mark.parametrize("kind", sorted(AST_ATTACKS))
def test_ast_attacks_change_the_program(kind):
    assert attacked(kind).ast != unit(PROGRAM).ast


def test_run_attack_fills_the_target():
    _, spec = run_attack(unit(PROGRAM), AttackSpec(3, AttackKind.RELOCATE_DECL_OUT_OF_LOOP, 0))
    assert spec.target == "main:w"


def test_seed_attacks_keep_traces(seeds):
    inputs = (4, 11, 0, 20, 7, 3, 15, 9)
    for seed in seeds:
        expected = evaluate_program(seed.unit, inputs)
        for kind in sorted(AST_ATTACKS):
            try:
                result = apply_attack(seed.unit, AttackSpec(MIN_LEVEL[kind], kind, 5))
            except NotApplicable:
                continue
            assert evaluate_program(result, inputs) == expected, (seed.name, kind)


# ============================================================================
# Ataques específicos
# ============================================================================

def test_rename_locals_keeps_globals_and_functions():
    result = attacked(AttackKind.RENAME_LOCALS)
    assert "limit" in result.text and "square" in result.text
    assert "int scale" not in result.text


def test_rename_functions_keeps_main():
    result = attacked(AttackKind.RENAME_FUNCTIONS)
    assert "fn main()" in result.text
    assert "square" not in result.text


def test_rename_entry_artifacts_adds_an_unused_global():
    result = attacked(AttackKind.RENAME_ENTRY_ARTIFACTS)
    assert len(result.ast.globals) == 2


def test_relocate_to_global_moves_a_main_constant():
    result = attacked(AttackKind.RELOCATE_DECL_TO_GLOBAL)
    assert len(result.ast.globals) == 2
    assert len(result.ast.function("main").body.stmts) == len(unit(PROGRAM).ast.function("main").body.stmts) - 1


def test_relocate_out_of_loop_hoists_the_invariant():
    main = attacked(AttackKind.RELOCATE_DECL_OUT_OF_LOOP).ast.function("main")
    loop = next(s for s in main.body.stmts if isinstance(s, While))
    assert all(getattr(s, "name", None) != "w" for s in loop.body.stmts)


def test_inline_removes_the_callee():
    result = attacked(AttackKind.INLINE_FUNCTION)
    assert [f.name for f in result.ast.functions] == ["main"]


def test_inline_reads_a_read_only_argument_directly():
    result = attacked(AttackKind.INLINE_FUNCTION)
    assert "total * total" in result.text
    main = result.ast.function("main")
    assert not any(isinstance(s, VarDecl) and s.init == Name("total") for s in main.body.stmts)


def test_inline_binds_a_written_parameter():
    text = """
    fn bump(int v): int {
        v = v + 1;
        return v;
    }
    fn main() {
        int t = read();
        int u = bump(t);
        print(u);
    }
    """
    main = attacked(AttackKind.INLINE_FUNCTION, text=text).ast.function("main")
    assert any(isinstance(s, VarDecl) and s.init == Name("t") for s in main.body.stmts)


def test_extract_adds_a_helper():
    result = attacked(AttackKind.EXTRACT_BLOCK)
    assert len(result.ast.functions) == 3


def test_while_to_for():
    main = attacked(AttackKind.WHILE_TO_FOR).ast.function("main")
    assert any(isinstance(s, For) for s in main.body.stmts)
    assert not any(isinstance(s, While) for s in main.body.stmts)


def test_while_to_dowhile_is_guarded():
    main = attacked(AttackKind.WHILE_TO_DOWHILE).ast.function("main")
    guard = next(s for s in main.body.stmts if isinstance(s, If) and isinstance(s.then.stmts[0], DoWhile))
    assert guard.orelse is None


def test_switch_to_ifchain():
    assert "switch" not in attacked(AttackKind.SWITCH_TO_IFCHAIN).text


def test_expand_compound_assign():
    assert "+=" not in attacked(AttackKind.EXPAND_COMPOUND_ASSIGN).text


def test_negate():
    a, b = Name("a"), IntLit(1)
    assert negate(Binary("<", a, b)) == Binary(">=", a, b)
    assert negate(Unary("!", a)) == a
    assert negate(a) == Unary("!", a)


@pytest.mark.parametrize("kind, text", [
    (AttackKind.RENAME_FUNCTIONS, "fn main() { print(1); }"),
    (AttackKind.RENAME_LOCALS, "fn main() { print(1); }"),
    (AttackKind.SWITCH_TO_IFCHAIN, "fn main() { print(1); }"),
    (AttackKind.WHILE_TO_FOR, "fn main() { print(1); }"),
    (AttackKind.SWAP_IF_ARMS, "fn main() { if (true) { print(1); } }"),
    (AttackKind.RELOCATE_DECL_OUT_OF_LOOP, "fn main() { int i = 0; while (i < 2) { i += 1; } }"),
    (AttackKind.INLINE_FUNCTION, "fn f(int n): int { if (n < 1) { return 0; } return f(n - 1); } fn main() { print(f(2)); }"),
])
def test_not_applicable(kind, text):
    with pytest.raises(NotApplicable):
        attacked(kind, text=text)


def test_logic_rewrite_needs_a_variant():
    with pytest.raises(NotApplicable):
        apply_attack(unit(PROGRAM), AttackSpec(6, AttackKind.LOGIC_REWRITE, 0))


def test_logic_rewrite_uses_the_variant(seeds):
    seed = next(s for s in seeds if s.logic_variant is not None)
    result = apply_attack(seed.unit, AttackSpec(6, AttackKind.LOGIC_REWRITE, 0), seed.logic_variant)
    assert result.ast == seed.logic_variant.ast


def test_statement_lists_cover_nested_bodies():
    func = unit(PROGRAM).ast.function("main")
    lists = statement_lists(func)
    assert lists[0].stmts == func.body.stmts
    assert any(len(entry.stmts) == 3 and isinstance(entry.stmts[0].init, Binary) for entry in lists)
