import pytest

from common.frontend.syntax import BOOL, INT
from common.lowering.compiler import compile_program
from common.lowering.ir import CallTarget, CmpBranch, LowToken, Op, ScopeTag
from common.pipeline.approach import Approach, ApproachConfig
from common.pipeline.arguments import remove_arguments
from common.pipeline.generalize import generalize
from common.pipeline.linearize import call_graph, canonicalize, remove_invoked
from common.pipeline.reinterpret import reinterpret
from common.pipeline.sequences import build_sequences, render_sequences

from tests.conftest import unit


SWITCH_PROGRAM = """
fn main() {
    int x = read();
    switch (x) {
        case 1: print(10);
        case 2: print(20);
        default: print(0);
    }
}
"""

IF_CHAIN_PROGRAM = """
fn main() {
    int x = read();
    if (x == 1) {
        print(10);
    } else if (x == 2) {
        print(20);
    } else {
        print(0);
    }
}
"""

HELPER_PROGRAM = """
fn twice(int v): int {
    return v * 2;
}

fn main() {
    int n = read();
    while (n > 0) {
        print(twice(n));
        n = n - 1;
    }
}
"""


def sequences(text: str, approach: str):
    return build_sequences(unit(text), ApproachConfig.create(approach))


def items_of(bundle):
    return {seq.unit_name: seq.items for seq in bundle}


# ============================================================================
# Configuração
# ============================================================================

def test_approach_flags():
    sta = ApproachConfig.create(Approach.STA)
    lla = ApproachConfig.create(Approach.LLA)
    ext = ApproachConfig.create(Approach.EXT_LLA, 5)
    assert not sta.is_low_level and not any(sta.flags)
    assert lla.linearization_enabled and not lla.weighting_enabled
    assert all(ext.flags) and ext.min_match_length == 5


@pytest.mark.parametrize("approach, mml", [("bogus", 3), (Approach.LLA, 0)])
def test_invalid_approach_config(approach, mml):
    with pytest.raises(ValueError):
        ApproachConfig.create(approach, mml)


# ============================================================================
# Sequências
# ============================================================================

def test_sta_is_one_sequence_of_source_tokens():
    source = unit("fn main() { print(1); }")
    bundle = build_sequences(source, ApproachConfig.create(Approach.STA))
    assert len(bundle) == 1
    assert bundle[0].items == tuple(t.key for t in source.tokens)
    assert bundle.total_length == 11


def test_low_level_sequences_have_no_labels(seeds, approach_config):
    if not approach_config.is_low_level:
        pytest.skip("só para abordagens de baixo nível")
    for seed in seeds:
        for seq in build_sequences(seed.unit, approach_config):
            assert all(item[0] not in (Op.LABEL, Op.SWITCH) for item in seq.items)


def test_lla_keys_ignore_scope_and_ext_lla_keeps_it():
    lla = sequences("fn main() { print(1); }", Approach.LLA)
    ext = sequences("fn main() { print(1); }", Approach.EXT_LLA)
    assert lla[0].items[0] == (Op.CONST, (INT, 1))
    assert ext[0].items[0] == (Op.CONST, (INT, 1), (ScopeTag.ROOT,))


@pytest.mark.parametrize("approach", [Approach.LLA, Approach.EXT_LLA])
def test_switch_reads_like_the_equivalent_if_chain(approach):
    assert items_of(sequences(SWITCH_PROGRAM, approach)) == items_of(sequences(IF_CHAIN_PROGRAM, approach))


def test_sta_tells_switch_from_if_chain():
    assert items_of(sequences(SWITCH_PROGRAM, Approach.STA)) != items_of(sequences(IF_CHAIN_PROGRAM, Approach.STA))


@pytest.mark.parametrize("approach", [Approach.LLA, Approach.EXT_LLA])
def test_renaming_identifiers_changes_nothing(approach):
    renamed = """
    fn double(int value): int {
        return value * 2;
    }

    fn main() {
        int count = read();
        while (count > 0) {
            print(double(count));
            count = count - 1;
        }
    }
    """
    original = sequences(HELPER_PROGRAM, approach)
    assert [s.items for s in sequences(renamed, approach)] == [s.items for s in original]


def test_lla_pool_keeps_every_function():
    bundle = sequences(HELPER_PROGRAM, Approach.LLA)
    assert [s.unit_name for s in bundle] == ["twice", "main"]


def test_ext_lla_pool_drops_invoked_functions():
    bundle = sequences(HELPER_PROGRAM, Approach.EXT_LLA)
    assert [s.unit_name for s in bundle] == ["main"]
    main = bundle[0]
    assert not any(item[0] == Op.INVOKE for item in main.items)
    # Corpo da função chamada com o caminho do local da chamada
    mul = next(item for item in main.items if item[0] == Op.MUL)
    assert mul[2] == (ScopeTag.ROOT, ScopeTag.WHILE_BODY)


def test_inlined_call_matches_handwritten_body():
    inlined = """
    fn main() {
        int n = read();
        while (n > 0) {
            print(n * 2);
            n = n - 1;
        }
    }
    """
    # O parâmetro só lido passa a ser o próprio `n`
    assert sequences(HELPER_PROGRAM, Approach.EXT_LLA)[0].items == sequences(inlined, Approach.EXT_LLA)[0].items


def test_extracted_block_reads_like_the_original():
    original = """
    fn main() {
        int a = read();
        int b = read();
        int c = a * b;
        print(c + a);
        int d = b - a;
        print(d);
    }
    """
    extracted = """
    fn show(int a, int b) {
        int c = a * b;
        print(c + a);
    }

    fn main() {
        int a = read();
        int b = read();
        show(a, b);
        int d = b - a;
        print(d);
    }
    """
    assert items_of(sequences(extracted, Approach.EXT_LLA)) == items_of(sequences(original, Approach.EXT_LLA))


def slot_tokens(items):
    return [(item[0], item[1]) for item in items if item[0] in (Op.LOAD, Op.STORE)]


def test_parameters_are_bound_last_first():
    text = """
    fn f(int x, int y) {
        x = x + y;
        print(x);
    }
    fn main() { f(1, 2); }
    """
    main = items_of(sequences(text, Approach.LLA))["main"]
    # y sai primeiro da pilha: slot 0; x: slot 1
    assert [item[0] for item in main[:4]] == [Op.CONST, Op.CONST, Op.STORE, Op.STORE]
    assert slot_tokens(main)[:4] == [(Op.STORE, 0), (Op.STORE, 1), (Op.LOAD, 1), (Op.LOAD, 0)]


def test_written_parameter_keeps_its_binding():
    text = """
    fn f(int x, int y) {
        x = x + y;
        print(x);
    }
    fn main() {
        int a = read();
        int b = read();
        f(a, b);
    }
    """
    main = sequences(text, Approach.EXT_LLA)[0].items
    assert slot_tokens(main) == [
        (Op.STORE, 0), (Op.STORE, 1),
        (Op.STORE, 2), (Op.LOAD, 2), (Op.LOAD, 1), (Op.STORE, 2), (Op.LOAD, 2),
    ]


def test_short_circuit_argument_is_kept_whole():
    text = """
    fn show(bool flag) { print(flag); }
    fn main() {
        int a = read();
        show(a > 0 && a < 9);
    }
    """
    bundle = sequences(text, Approach.EXT_LLA)
    assert len(bundle.failures) == 1
    consts = [item[1] for item in bundle[0].items if item[0] == Op.CONST]
    assert (BOOL, True) in consts and (BOOL, False) in consts


def test_recursive_calls_stay_opaque():
    text = """
    fn fact(int n): int {
        if (n <= 1) { return 1; }
        return n * fact(n - 1);
    }
    fn main() { print(fact(read() % 8)); }
    """
    bundle = sequences(text, Approach.EXT_LLA)
    assert [s.unit_name for s in bundle] == ["main"]
    invokes = [item for item in bundle[0].items if item[0] == Op.INVOKE]
    assert len(invokes) == 1
    assert invokes[0][1].argc == 1


def test_init_is_always_in_the_pool():
    bundle = sequences("int g = 3; fn main() { print(g); }", Approach.EXT_LLA)
    assert [s.unit_name for s in bundle] == ["main", "<init>"]


def test_render_sequences_headers():
    text = render_sequences(sequences("fn main() { print(1); }", Approach.EXT_LLA))
    assert text.splitlines() == ["== main/3 ==", "CONST 1 @ fn", "PRINT @ fn", "RETURN @ fn"]
    lla = render_sequences(sequences("fn main() { print(1); }", Approach.LLA))
    assert lla.splitlines()[1] == "CONST 1"


# ============================================================================
# Passos isolados
# ============================================================================

def test_generalize_drops_labels_and_targets():
    body = (
        LowToken(Op.LOAD, 0),
        LowToken(Op.CONST, (INT, 0)),
        LowToken(Op.IFCMP, CmpBranch("LE", 1)),
        LowToken(Op.GOTO, 2),
        LowToken(Op.LABEL, 1),
        LowToken(Op.LABEL, 2),
        LowToken(Op.RETURN),
    )
    assert generalize(body) == (
        LowToken(Op.LOAD, 0),
        LowToken(Op.CONST, (INT, 0)),
        LowToken(Op.IFCMP, CmpBranch("LE")),
        LowToken(Op.GOTO),
        LowToken(Op.RETURN),
    )


def test_reinterpret_without_switch_is_identity():
    body = compile_program(unit("fn main() { print(1); }").ast).entry.body
    assert reinterpret(body) == body


def test_reinterpret_removes_every_switch(seeds):
    for seed in seeds:
        for func in compile_program(seed.unit.ast).functions:
            assert all(t.mnemonic != Op.SWITCH for t in reinterpret(func.body))


def test_remove_arguments_drops_preparation():
    body = (
        LowToken(Op.CONST, (INT, 1)),
        LowToken(Op.CONST, (INT, 2)),
        LowToken(Op.ADD),
        LowToken(Op.LOAD, 0),
        LowToken(Op.INVOKE, CallTarget(1, 2, False)),
        LowToken(Op.RETURN),
    )
    failures = []
    assert remove_arguments(body, "main", failures) == (
        LowToken(Op.INVOKE, CallTarget(1, 2, False)),
        LowToken(Op.RETURN),
    )
    assert failures == []
    # Só o segundo argumento era um LOAD
    assert remove_arguments(body, "main")[0].operand.arg_slots == (None, 0)


def test_remove_arguments_records_failure_at_block_boundary():
    body = (
        LowToken(Op.LABEL, 1),
        LowToken(Op.INVOKE, CallTarget(1, 1, False)),
        LowToken(Op.RETURN),
    )
    failures = []
    assert remove_arguments(body, "main", failures) == body
    assert len(failures) == 1
    assert "main" in str(failures[0])


def test_canonicalize_renumbers_by_first_occurrence():
    body = (
        LowToken(Op.LOAD, 4),
        LowToken(Op.STORE, 2),
        LowToken(Op.LOAD, 4),
        LowToken(Op.INVOKE, CallTarget(7, 0, False, name="f")),
        LowToken(Op.RETURN),
    )
    result = canonicalize(body)
    assert [t.operand for t in result[:3]] == [0, 1, 0]
    assert result[3].operand == CallTarget(0, 0, False)


def test_remove_invoked_keeps_uncalled_cycles():
    program = compile_program(unit("""
        fn ping(int n) { if (n > 0) { pong(n - 1); } }
        fn pong(int n) { if (n > 0) { ping(n - 1); } }
        fn helper() { }
        fn main() { helper(); }
    """).ast)
    graph = call_graph(program)
    assert graph.has_edge(0, 1) and graph.has_edge(1, 0)
    assert remove_invoked(program) == (0, 1, 3)
