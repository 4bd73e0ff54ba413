import pytest
from hypothesis import given
from hypothesis import strategies as st

from debmap.errors import (
    AlternativesInProvides,
    BadAtomName,
    BadConstraintOp,
    BuildProfilesUnsupported,
    RelationSyntaxError,
    UnbalancedParenthesis,
)
from debmap.relations import (
    PackageAtom,
    RelationExpr,
    RelationKind,
    VersionConstraint,
    parse_relation,
    render_relation,
)
from debmap.version import parse_version
from strategies import relation_exprs

D = RelationKind.DEPENDS
P = RelationKind.PROVIDES


class TestKinds:
    def test_exactly_nine_in_declaration_order(self):
        assert [kind.field_name for kind in RelationKind] == [
            "Depends",
            "Pre-Depends",
            "Recommends",
            "Suggests",
            "Enhances",
            "Provides",
            "Conflicts",
            "Breaks",
            "Replaces",
        ]

    def test_field_name_bijection(self):
        for kind in RelationKind:
            assert RelationKind.from_field_name(kind.field_name) is kind

    def test_lookup_case_insensitive(self):
        assert RelationKind.from_field_name("pre-depends") is RelationKind.PRE_DEPENDS
        assert RelationKind.from_field_name("DEPENDS") is D

    def test_unknown_field(self):
        assert RelationKind.from_field_name("Depend") is None


class TestParse:
    def test_single_atom(self):
        expr = parse_relation(D, "chrony")
        assert expr == RelationExpr(((PackageAtom("chrony"),),))

    def test_empty_text(self):
        assert parse_relation(D, "") == RelationExpr(())
        assert parse_relation(D, "  \n\t ") == RelationExpr(())

    def test_grammar_example(self):
        expr = parse_relation(D, "aa (>= 2.0) | bb, cc [amd64]")
        first, second = expr.groups
        assert first == (
            PackageAtom("aa", constraint=VersionConstraint(">=", parse_version("2.0"))),
            PackageAtom("bb"),
        )
        assert second == (PackageAtom("cc", arch_qualifier=("amd64",)),)

    def test_whitespace_insensitive(self):
        tight = parse_relation(D, "aa(>=2.0)|bb,cc[amd64]")
        spread = parse_relation(D, "  aa\n ( >=\t2.0 )\n | bb ,\n cc [ amd64 ]  ")
        assert tight == spread == parse_relation(D, "aa (>= 2.0) | bb, cc [amd64]")

    def test_all_constraint_operators(self):
        for op in ("<<", "<=", "=", ">=", ">>"):
            expr = parse_relation(D, f"aa ({op} 1.0)")
            assert expr.groups[0][0].constraint.op == op

    def test_negated_arch_qualifier(self):
        atom = parse_relation(D, "aa [!i386 !armhf]").groups[0][0]
        assert atom.arch_qualifier == ("!i386", "!armhf")

    def test_versioned_provides(self):
        atom = parse_relation(P, "mail-agent (= 8.1)").groups[0][0]
        assert atom.provided_version == parse_version("8.1")
        assert atom.constraint is None

    def test_provides_plain(self):
        expr = parse_relation(P, "ntp-client, mail-agent")
        assert [group[0].name for group in expr.groups] == ["ntp-client", "mail-agent"]


class TestErrors:
    def assert_offset(self, error_info, offset):
        assert error_info.value.offset == offset

    def test_missing_name(self):
        with pytest.raises(BadAtomName) as info:
            parse_relation(D, "aa, , bb")
        self.assert_offset(info, 4)

    def test_short_name(self):
        with pytest.raises(BadAtomName) as info:
            parse_relation(D, "aa | 9")
        self.assert_offset(info, 5)

    def test_trailing_comma(self):
        with pytest.raises(BadAtomName) as info:
            parse_relation(D, "aa,")
        self.assert_offset(info, 3)

    def test_bare_less_than_rejected(self):
        with pytest.raises(BadConstraintOp) as info:
            parse_relation(D, "aa (< 1.0)")
        self.assert_offset(info, 4)

    def test_reversed_op_rejected(self):
        with pytest.raises(BadConstraintOp):
            parse_relation(D, "aa (=> 1.0)")

    def test_unclosed_paren(self):
        with pytest.raises(UnbalancedParenthesis) as info:
            parse_relation(D, "aa (>= 1.0")
        self.assert_offset(info, 3)

    def test_stray_close_paren(self):
        with pytest.raises(UnbalancedParenthesis) as info:
            parse_relation(D, "aa )")
        self.assert_offset(info, 3)

    def test_unclosed_bracket(self):
        with pytest.raises(UnbalancedParenthesis) as info:
            parse_relation(D, "aa [amd64")
        self.assert_offset(info, 3)

    def test_empty_arch_qualifier(self):
        with pytest.raises(RelationSyntaxError):
            parse_relation(D, "aa []")

    def test_junk_between_atoms(self):
        with pytest.raises(RelationSyntaxError) as info:
            parse_relation(D, "aa bb")
        self.assert_offset(info, 3)

    def test_alternatives_in_provides(self):
        with pytest.raises(AlternativesInProvides) as info:
            parse_relation(P, "aa | bb")
        self.assert_offset(info, 3)

    def test_provides_constraint_must_be_equals(self):
        with pytest.raises(BadConstraintOp):
            parse_relation(P, "aa (>= 1.0)")

    def test_build_profiles_rejected(self):
        with pytest.raises(BuildProfilesUnsupported) as info:
            parse_relation(D, "aa <!nocheck>")
        self.assert_offset(info, 3)

    def test_offset_in_message(self):
        with pytest.raises(BadAtomName, match="offset 3"):
            parse_relation(D, "aa,")


class TestRender:
    def test_zero_groups(self):
        assert render_relation(RelationExpr(())) == ""

    def test_bare_name(self):
        assert render_relation(RelationExpr(((PackageAtom("aa"),),))) == "aa"

    def test_canonical_example(self):
        text = "aa (>= 2.0) | bb, cc [amd64]"
        assert render_relation(parse_relation(D, text)) == text

    def test_provided_version_renders_as_equals(self):
        expr = parse_relation(P, "mail-agent (= 8.1)")
        assert render_relation(expr) == "mail-agent (= 8.1)"


class TestAtomInvariants:
    def test_constraint_excludes_provided_version(self):
        with pytest.raises(ValueError):
            PackageAtom(
                "aa",
                constraint=VersionConstraint("=", parse_version("1")),
                provided_version=parse_version("1"),
            )

    def test_empty_group_rejected(self):
        with pytest.raises(ValueError):
            RelationExpr(((),))


@given(relation_exprs())
def test_round_trip(kind_and_expr):
    kind, expr = kind_and_expr
    assert parse_relation(kind, render_relation(expr)) == expr


_WS_CHOICES = st.sampled_from(["", " ", "  ", "\t", " \n "])


@st.composite
def _noisy_rendering(draw):
    kind, expr = draw(relation_exprs())
    ws = lambda: draw(_WS_CHOICES)  # noqa: E731

    def atom_text(atom):
        text = atom.name
        version = atom.provided_version
        if atom.constraint is not None:
            text += f"{ws()}({ws()}{atom.constraint.op}{ws()}{atom.constraint.version}{ws()})"
        elif version is not None:
            text += f"{ws()}({ws()}={ws()}{version}{ws()})"
        if atom.arch_qualifier is not None:
            tokens = (" " + ws()).join(atom.arch_qualifier)
            text += f"{ws()}[{ws()}{tokens}{ws()}]"
        return text

    body = f"{ws()},{ws()}".join(
        f"{ws()}|{ws()}".join(atom_text(atom) for atom in group) for group in expr.groups
    )
    return kind, expr, ws() + body + ws()


@given(_noisy_rendering())
def test_whitespace_noise_is_insignificant(case):
    kind, expr, noisy = case
    assert parse_relation(kind, noisy) == expr


@given(relation_exprs())
def test_group_count_is_commas_plus_one(kind_and_expr):
    kind, expr = kind_and_expr
    rendered = render_relation(expr)
    if expr.groups:
        assert len(expr.groups) == rendered.count(",") + 1
