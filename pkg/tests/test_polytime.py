import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import is_subset, naive_classes, naive_table, random_system
from reactsys.core import Reaction, ReactionSystem, normalize_singleton_products, result
from reactsys.errors import ClassMismatchError, PreconditionError, UsageError
from reactsys.polytime import (
    additive_reduction,
    bijective_inhibitorless,
    bijective_reactantless,
    gfp_monotone,
    is_empty_function,
    lfp_monotone,
    lfp_with_steps,
    pointwise_leq_antitone,
    pointwise_leq_monotone,
    res_eq_inhibitorless,
    res_eq_reactantless,
)

seeds = st.integers(0, 2**32 - 1)


def build(names, *reactions):
    return ReactionSystem.build(names, reactions)


def identity(names):
    return ReactionSystem.build(names, [([x], [], [x]) for x in names])


def brute_bijective(rs):
    return len(set(naive_table(rs))) == 1 << rs.size


def random_permutation_system(rng, n, extra=0):
    """Inhibitorless system computing an entity permutation, plus redundant
    multi-reactant reactions that agree with it."""
    perm = list(range(n))
    rng.shuffle(perm)
    reactions = [Reaction(1 << x, 0, 1 << perm[x]) for x in range(n)]
    for _ in range(extra):
        r = sum(1 << x for x in range(n) if rng.random() < 0.5) or 1
        image = sum(1 << perm[x] for x in range(n) if r >> x & 1)
        p = sum(1 << y for y in range(n) if image >> y & 1 and rng.random() < 0.7) or (image & -image)
        reactions.append(Reaction(r, 0, p))
    rng.shuffle(reactions)
    return ReactionSystem(identity([f"e{i}" for i in range(n)]).entities, tuple(reactions))


class TestKnasterTarski:
    def test_examples(self):
        assert lfp_monotone(build(["a"], (["a"], [], ["a"]))) == 0
        rs = build(["a", "b"], ([], [], ["a"]), (["a"], [], ["b"]), (["b"], [], ["a"]))
        assert lfp_with_steps(rs) == (3, 3)
        assert gfp_monotone(identity(["a", "b"])) == 3
        assert gfp_monotone(build(["a", "b"], (["a"], [], ["a"]))) == 1

    def test_rejects_inhibitors(self):
        with pytest.raises(ClassMismatchError):
            lfp_monotone(build(["a"], ([], ["a"], ["a"])))

    @settings(max_examples=200)
    @given(st.integers(1, 8), seeds)
    def test_bounds_every_fixed_point(self, n, seed):
        rng = random.Random(seed)
        rs = random_system(rng, n, rng.randint(0, 10), cls="il")
        lfp, steps = lfp_with_steps(rs)
        gfp = gfp_monotone(rs)
        assert steps <= n + 1
        for f in naive_classes(rs)[0]:
            assert is_subset(lfp, f) and is_subset(f, gfp)


class TestResultEquality:
    def test_monotone_examples(self):
        a = build(["a", "b", "c"], (["a"], [], ["b"]))
        assert pointwise_leq_monotone(a, a)
        assert pointwise_leq_monotone(a, build(["a", "b", "c"], (["a"], [], ["b", "c"])))
        assert res_eq_inhibitorless(a, build(["a", "b", "c"], (["a"], [], ["b"]), (["a", "c"], [], ["b"])))
        assert res_eq_inhibitorless(a, normalize_singleton_products(a))

    def test_antitone_examples(self):
        names = ["a", "b", "c"]
        a = build(names, ([], ["a"], ["b"]))
        assert res_eq_reactantless(a, a)
        assert res_eq_reactantless(a, build(names, ([], ["a"], ["b"]), ([], ["a", "c"], ["b"])))
        assert not res_eq_reactantless(a, build(names, ([], ["b"], ["b"])))

    def test_class_and_background_checks(self):
        il = build(["a"], (["a"], [], ["a"]))
        rl = build(["a"], ([], ["a"], ["a"]))
        with pytest.raises(ClassMismatchError):
            pointwise_leq_monotone(il, rl)
        with pytest.raises(ClassMismatchError):
            pointwise_leq_antitone(il, rl)
        with pytest.raises(UsageError):
            res_eq_inhibitorless(il, build(["b"], (["b"], [], ["b"])))

    @settings(max_examples=150)
    @given(st.integers(1, 8), seeds, st.sampled_from(["il", "rl"]))
    def test_against_brute_force(self, n, seed, cls):
        rng = random.Random(seed)
        a = random_system(rng, n, rng.randint(0, 6), cls=cls)
        if rng.random() < 0.5:
            # same function, different syntax
            b = normalize_singleton_products(a.with_reactions(a.reactions[::-1]))
        else:
            b = random_system(rng, n, rng.randint(0, 6), cls=cls, name="B")
        ta, tb = naive_table(a), naive_table(b)
        leq = all(is_subset(x, y) for x, y in zip(ta, tb))
        if cls == "il":
            assert pointwise_leq_monotone(a, b) == leq
            assert res_eq_inhibitorless(a, b) == (ta == tb)
        else:
            assert pointwise_leq_antitone(a, b) == leq
            assert res_eq_reactantless(a, b) == (ta == tb)

    def test_empty_function(self):
        assert is_empty_function(build(["a", "b"], (["a"], ["a"], ["b"])))
        assert not is_empty_function(build(["a", "b"], ([], [], ["b"])))
        assert is_empty_function(build(["a"]))

    @settings(max_examples=150)
    @given(st.integers(1, 6), seeds)
    def test_empty_function_against_brute_force(self, n, seed):
        rng = random.Random(seed)
        rs = random_system(rng, n, rng.randint(0, 4), density=0.6)
        assert is_empty_function(rs) == all(r == 0 for r in naive_table(rs))


class TestBijectivity:
    def test_inhibitorless_examples(self):
        assert bijective_inhibitorless(identity(["a", "b"]))
        assert bijective_inhibitorless(build(["x1", "x2"], (["x1"], [], ["x2"]), (["x2"], [], ["x1"])))
        v = bijective_inhibitorless(build(["p"], ([], [], ["p"])))
        assert not v and v.failed_condition == 1

    def test_failure_conditions(self):
        v = bijective_inhibitorless(build(["a", "b"], (["a"], [], ["a"]), (["b"], [], ["a"])))
        assert v.failed_condition == 2
        v = bijective_inhibitorless(build(["a", "b"], (["a"], [], ["a"]), (["b"], [], ["b"]), (["a", "b"], [], ["a"])))
        assert v.bijective
        v = bijective_inhibitorless(build(["a", "b", "c"], (["a"], [], ["a"]), (["b"], [], ["b"]), (["c"], [], ["c"]),
                                          (["a", "b"], [], ["c"])))
        assert v.failed_condition == 3

    def test_reactantless_examples(self):
        names = ["a", "b"]
        assert bijective_reactantless(build(names, ([], ["a"], ["a"]), ([], ["b"], ["b"])))
        assert bijective_reactantless(build(names, ([], ["a"], ["b"]), ([], ["b"], ["a"])))
        assert not bijective_reactantless(build(["p"], ([], [], ["p"])))
        with pytest.raises(ClassMismatchError):
            bijective_reactantless(identity(["a"]))

    @settings(max_examples=200)
    @given(st.integers(1, 8), seeds)
    def test_inhibitorless_against_brute_force(self, n, seed):
        rng = random.Random(seed)
        if rng.random() < 0.5:
            rs = random_permutation_system(rng, n, rng.randint(0, 3))
            if rng.random() < 0.5:
                rs = rs.with_reactions(rs.reactions + (Reaction(rng.getrandbits(n), 0, 1 << rng.randrange(n)),))
        else:
            rs = random_system(rng, n, rng.randint(0, 10), cls="il")
        assert bool(bijective_inhibitorless(rs)) == brute_bijective(rs)

    @settings(max_examples=200)
    @given(st.integers(1, 8), seeds)
    def test_reactantless_against_brute_force_and_square(self, n, seed):
        rng = random.Random(seed)
        if rng.random() < 0.5:
            perm = list(range(n))
            rng.shuffle(perm)
            reactions = [Reaction(0, 1 << x, 1 << perm[x]) for x in range(n)]
            if rng.random() < 0.5:
                reactions.append(Reaction(0, rng.getrandbits(n), 1 << rng.randrange(n)))
            rs = ReactionSystem(identity([f"e{i}" for i in range(n)]).entities, tuple(reactions))
        else:
            rs = random_system(rng, n, rng.randint(0, 10), cls="rl")
        tab = naive_table(rs)
        square_bijective = len({tab[t] for t in tab}) == 1 << n
        got = bool(bijective_reactantless(rs))
        assert got == brute_bijective(rs) == square_bijective

    @settings(max_examples=120)
    @given(st.integers(1, 8), seeds)
    def test_structure_of_bijective_systems(self, n, seed):
        rng = random.Random(seed)
        rs = random_permutation_system(rng, n, rng.randint(0, 4))
        assert bijective_inhibitorless(rs)
        singles = [result(rs, 1 << x) for x in range(n)]
        for t in range(1 << n):
            img = result(rs, t)
            assert bin(img).count("1") == bin(t).count("1")
            union = 0
            for x in range(n):
                if t >> x & 1:
                    union |= singles[x]
            assert img == union


class TestAdditiveReduction:
    def test_examples(self):
        ident = identity(["a", "b"])
        assert additive_reduction(ident) == ident
        out = additive_reduction(ident.with_reactions(ident.reactions + (Reaction(3, 0, 1),)))
        assert out.reactions == ident.reactions
        cyc = build(["x1", "x2"], (["x1"], [], ["x2"]), (["x2"], [], ["x1"]), (["x1", "x2"], [], ["x1", "x2"]))
        assert additive_reduction(cyc).reactions == cyc.reactions[:2]

    def test_rejects_non_bijective(self):
        with pytest.raises(PreconditionError):
            additive_reduction(build(["p"], ([], [], ["p"])))

    @settings(max_examples=100)
    @given(st.integers(1, 8), seeds)
    def test_preserves_result(self, n, seed):
        rs = random_permutation_system(random.Random(seed), n, 4)
        out = additive_reduction(rs)
        assert all(bin(r.reactants).count("1") <= 1 for r in out.reactions)
        assert naive_table(out) == naive_table(rs)
