import pytest

from cedille_core import (
    Box,
    Context,
    Decl,
    ErrorCode,
    Star,
    TypeCheckError,
    Var,
    VarCategory,
    alpha_eq,
    check_module,
    def_eq,
    erase,
    infer,
    parse_module,
    parse_term,
    print_term,
    var_sort_ok,
    whnf,
)

u = Var("u", VarCategory.TERM)
a = Var("a", VarCategory.TERM)
X = Var("X", VarCategory.TYPE)
K = Var("k", VarCategory.KIND)

EMPTY = Context()


def ctx_of(*pairs) -> Context:
    entries = []
    for name, ty in pairs:
        cat = VarCategory.TYPE if name[0].isupper() else VarCategory.TERM
        entries.append(Decl(Var(name, cat), parse_term(ty)))
    return Context(entries)


def test_var_sort_ok():
    assert var_sort_ok(u, Star())
    assert not var_sort_ok(X, Star())
    assert var_sort_ok(X, Box())
    assert not var_sort_ok(u, Box())
    assert not var_sort_ok(K, Box())
    assert not var_sort_ok(K, Star())


def test_star_has_type_box():
    assert infer(EMPTY, Star()) == Box()


def test_box_not_typable():
    with pytest.raises(TypeCheckError) as e:
        infer(EMPTY, Box())
    assert e.value.code is ErrorCode.BOX_NOT_TYPABLE


def test_pi_formation():
    assert infer(EMPTY, parse_term("Pi X : * . Pi u : X . X")) == Star()


def test_polymorphic_identity():
    got = infer(EMPTY, parse_term("Lam X : * . lam u : X . u"))
    assert alpha_eq(got, parse_term("all X : * . Pi u : X . X"))


def test_beta_closed():
    got = infer(EMPTY, parse_term(r"beta (\x. x) { \x. x }"))
    assert alpha_eq(got, parse_term(r"{ \x. x ~ \x. x }"))


def test_sigma_swaps_equation():
    ctx = ctx_of(("A", "*"), ("a", "A"), ("b", "A"), ("e", "{ a ~ b }"))
    got = infer(ctx, parse_term("sigma e"))
    assert alpha_eq(got, parse_term("{ b ~ a }"))


def test_rho_rewrites_right_to_left():
    ctx = ctx_of(
        ("A", "*"), ("a", "A"), ("b", "A"), ("e", "{ a ~ b }"),
        ("P", "Pi u : A . *"), ("p", "P b"),
    )
    got = infer(ctx, parse_term("rho e @ x . P x - p"))
    assert alpha_eq(got, parse_term("P a"))


def test_phi_types_at_subject_erases_to_target():
    ctx = ctx_of(("A", "*"), ("a", "A"), ("b", "A"), ("e", "{ a ~ b }"))
    t = parse_term("phi e - a { b }")
    assert alpha_eq(infer(ctx, t), parse_term("A"))
    assert erase(t) == parse_term("b")


def test_delta_proves_anything():
    ctx = ctx_of(("A", "*"), ("e", r"{ \x. \y. x ~ \x. \y. y }"))
    assert alpha_eq(infer(ctx, parse_term("delta A e")), parse_term("A"))


def test_intersection_intro():
    ctx = ctx_of(("A", "*"), ("a", "A"))
    got = infer(ctx, parse_term("[ a , a @ x . A ]"))
    assert alpha_eq(got, parse_term("iota x : A . A"))


def test_inference_is_deterministic():
    ctx = ctx_of(("A", "*"), ("a", "A"))
    t = parse_term("[ a , a @ x . A ]")
    assert infer(ctx, t) == infer(ctx, t)


def test_checker_terminates_on_self_application():
    # typing is syntax-directed: the checker answers (here, a type error
    # since u : A is no function) instead of looping
    ctx = ctx_of(("A", "*"))
    with pytest.raises(TypeCheckError) as e:
        infer(ctx, parse_term("lam u : A . u u"), fuel=1000)
    assert e.value.code is ErrorCode.EXPECTED_PI_TYPE


def test_check_module_accepts_identity():
    js = check_module(
        parse_module("id = Lam X : * . lam u : X . u : all X : * . Pi u : X . X .")
    )
    assert [j.name for j in js] == ["id"]
    assert alpha_eq(js[0].type, parse_term("all X : * . Pi u : X . X"))


def test_check_module_unbound():
    with pytest.raises(TypeCheckError) as e:
        check_module(parse_module("x = y : * ."))
    assert e.value.code is ErrorCode.UNBOUND_VARIABLE
    assert e.value.definition == "x"


def test_check_module_kind_definition_unfolds():
    js = check_module(
        parse_module("$k = * : # . Polyid2 = lam X : * . X : Pi X : $k . $k .")
    )
    assert [j.name for j in js] == ["$k", "Polyid2"]


def test_box_annotated_definition_needs_kind_variable():
    # a type variable defined at '#' has no sort for its annotation
    with pytest.raises(TypeCheckError) as e:
        check_module(parse_module("T = * : # ."))
    assert e.value.code is ErrorCode.BOX_NOT_TYPABLE


@pytest.mark.parametrize(
    "source,code",
    [
        ("x = y : * .", ErrorCode.UNBOUND_VARIABLE),
        ("bad = Lam A : * . lam a : A . a a : * .", ErrorCode.EXPECTED_PI_TYPE),
        ("bad = Lam A : * . lam a : A . a - a : * .", ErrorCode.EXPECTED_FORALL_TYPE),
        ("bad = Lam A : * . lam a : A . a.1 : * .", ErrorCode.EXPECTED_IOTA_TYPE),
        ("bad = Lam A : * . lam a : A . sigma a : * .", ErrorCode.EXPECTED_EQUATION_TYPE),
        ("bad = Lam A : * . Pi X : A . A : * .", ErrorCode.SORT_CHECK_FAILED),
        (
            "bad = Lam A : * . Lam B : * . lam f : Pi u : B . B . lam a : A . f a : * .",
            ErrorCode.NOT_DEFINITIONALLY_EQUAL,
        ),
        ("bad = Lam A : * . Lam a : A . a : * .", ErrorCode.ERASED_VAR_OCCURS_FREE),
        (
            "bad = Lam A : * . lam a : A . lam b : A . [ a , b @ x . A ] : * .",
            ErrorCode.ERASURE_MISMATCH,
        ),
        (
            "bad = Lam A : * . lam a : A . lam e : { a ~ a } . delta A e : * .",
            ErrorCode.DELTA_EQUATION_MISMATCH,
        ),
        ("bad = \\x. x : * .", ErrorCode.PURITY_VIOLATION),
        ("bad = # : # .", ErrorCode.BOX_NOT_TYPABLE),
        ("bad = iota X : (all Y : * . Pi u : Y . Y) . X : * .", ErrorCode.SORT_CHECK_FAILED),
    ],
)
def test_error_codes(source, code):
    with pytest.raises(TypeCheckError) as e:
        check_module(parse_module(source))
    assert e.value.code is code


def test_beta_witness_scope_checked():
    ctx = ctx_of(("A", "*"), ("a", "A"))
    with pytest.raises(TypeCheckError) as e:
        infer(ctx, parse_term("beta a { q }"))
    assert e.value.code is ErrorCode.UNBOUND_VARIABLE


def test_strict_intersections_flag():
    # components beta-equal but not alpha-equal after erasure
    ctx = ctx_of(("A", "*"), ("a", "A"))
    t = parse_term(r"[ a , beta a { (\u. u) a } @ x . { x ~ a } ]")
    got = infer(ctx, t)
    assert alpha_eq(got, parse_term("iota x : A . { x ~ a }"))
    with pytest.raises(TypeCheckError) as e:
        infer(ctx, t, strict_intersections=True)
    assert e.value.code is ErrorCode.ERASURE_MISMATCH


def test_weakening():
    cases = [
        (ctx_of(("A", "*"), ("a", "A")), "[ a , a @ x . A ]"),
        (ctx_of(("A", "*")), "lam u : A . u"),
        (EMPTY, "Lam X : * . lam u : X . u"),
    ]
    for ctx, src in cases:
        t = parse_term(src)
        before = infer(ctx, t)
        wider = ctx.extend(Decl(Var("Zfresh", VarCategory.TYPE), Star()))
        assert alpha_eq(infer(wider, t), before)


def test_weakening_on_corpus():
    from pathlib import Path

    from cedille_core import Defn

    corpus = Path(__file__).resolve().parents[1] / "corpus" / "positive"
    fresh = Var("Zfresh", VarCategory.TYPE)
    for path in sorted(corpus.glob("*.cdc")):
        module = parse_module(path.read_text(), str(path))
        ctx = Context()
        for d in module.definitions:
            narrow = infer(ctx, d.definiens)
            wide = infer(ctx.extend(Decl(fresh, Star())), d.definiens)
            assert alpha_eq(narrow, wide), (path.name, d.name)
            ctx = ctx.extend(Defn(d.var, d.definiens, d.annotation))


def test_synthesized_types_are_sorted():
    # if infer(ctx, t) = A and A /= #, then A itself has a sort
    ctx = ctx_of(("A", "*"), ("a", "A"))
    for src in ["lam u : A . u", "beta a { a }", "[ a , a @ x . A ]", "A"]:
        ty = infer(ctx, parse_term(src))
        if ty == Box():
            continue
        sort = whnf(ctx, infer(ctx, ty))
        assert sort in (Star(), Box())


def test_synthesized_types_are_sorted_on_corpus():
    from pathlib import Path

    from cedille_core import Defn

    corpus = Path(__file__).resolve().parents[1] / "corpus" / "positive"
    for path in sorted(corpus.glob("*.cdc")):
        module = parse_module(path.read_text(), str(path))
        ctx = Context()
        for d in module.definitions:
            ty = infer(ctx, d.definiens)
            if ty != Box():
                sort = whnf(ctx, infer(ctx, ty))
                assert sort in (Star(), Box()), (path.name, d.name)
            ctx = ctx.extend(Defn(d.var, d.definiens, d.annotation))


def test_shadowing_binder_is_freshened():
    ctx = ctx_of(("A", "*"), ("a", "A"))
    got = infer(ctx, parse_term("lam a : A . a"))
    assert alpha_eq(got, parse_term("Pi u : A . A"))


def test_accepted_equations_are_pure():
    # the parse invariant, re-asserted over every accepted corpus module
    from pathlib import Path

    from cedille_core import Eq, is_pure

    def equations(t):
        match t:
            case Eq(l, r):
                yield l, r
        for name in (
            "subject", "lhs", "rhs", "witness", "motive", "proof", "fun",
            "arg", "guide", "domain", "body", "first", "second", "target",
            "definiens", "annotation",
        ):
            sub = getattr(t, name, None)
            if sub is not None and not isinstance(sub, str):
                yield from equations(sub)

    corpus = Path(__file__).resolve().parents[1] / "corpus" / "positive"
    seen = 0
    for path in sorted(corpus.glob("*.cdc")):
        module = parse_module(path.read_text(), str(path))
        check_module(module)
        for d in module.definitions:
            for t in (d.definiens, d.annotation):
                for l, r in equations(t):
                    assert is_pure(l) and is_pure(r)
                    seen += 1
    assert seen >= 10


def test_annotated_argument_type_unfolds_for_matching():
    mod = parse_module(
        "Nat = all X : * . Pi s : Pi u : X . X . Pi z : X . X : * .\n"
        "zero = Lam X : * . lam s : Pi u : X . X . lam z : X . z : Nat .\n"
        "idn = lam n : Nat . n : Pi n : Nat . Nat .\n"
        "z2 = idn zero : Nat .\n"
    )
    js = check_module(mod)
    assert [j.name for j in js] == ["Nat", "zero", "idn", "z2"]
