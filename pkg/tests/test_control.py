import pytest
from hypothesis import given

from debmap.control import (
    ControlField,
    ControlStanza,
    parse_stanzas,
    render_stanzas,
    to_package_meta,
)
from debmap.errors import (
    BadPackageName,
    ContinuationWithoutField,
    DuplicateField,
    MalformedField,
    MissingMandatoryField,
    RelationError,
    VersionError,
)
from debmap.relations import RelationKind
from strategies import stanza_lists


class TestParseStanzas:
    def test_simple_stanza(self):
        stanzas = parse_stanzas("Package: maratona-kairos\nVersion: 1.0\n")
        assert len(stanzas) == 1
        assert stanzas[0].names() == ["Package", "Version"]
        assert stanzas[0].get("Package") == "maratona-kairos"
        assert stanzas[0].get("Version") == "1.0"

    def test_empty_input(self):
        assert parse_stanzas("") == []
        assert parse_stanzas("\n  \n\t\n") == []

    def test_multiline_value(self):
        # hand-derivation: "s" is the first logical line, then the three
        # continuations "line2", "." (blank-line placeholder), "line3"
        stanzas = parse_stanzas("A: x\nDescription: s\n line2\n .\n line3\n\nA: y\n")
        assert len(stanzas) == 2
        description = stanzas[0].get("Description")
        assert description == "s\nline2\n.\nline3"
        assert description.count("\n") == 3
        assert stanzas[1].get("A") == "y"

    def test_continuation_keeps_exactly_one_leading_blank(self):
        stanza = parse_stanzas("A: x\n\t tabbed\n  spaced\n")[0]
        assert stanza.get("A") == "x\n tabbed\n spaced"

    def test_comment_lines_ignored(self):
        stanzas = parse_stanzas("# header\nA: x\n# middle\nB: y\n")
        assert len(stanzas) == 1
        assert stanzas[0].names() == ["A", "B"]

    def test_crlf_input(self):
        stanza = parse_stanzas("A: x\r\nB: y\r\n")[0]
        assert stanza.get("A") == "x"
        assert "\r" not in stanza.render()

    def test_first_line_trimmed(self):
        assert parse_stanzas("A:    padded value   \n")[0].get("A") == "padded value"

    def test_whitespace_only_line_separates(self):
        assert len(parse_stanzas("A: x\n \t \nB: y\n")) == 2

    def test_no_colon(self):
        with pytest.raises(MalformedField) as info:
            parse_stanzas("A: x\nbroken line\n")
        assert info.value.line == 2

    def test_duplicate_field_case_insensitive(self):
        with pytest.raises(DuplicateField) as info:
            parse_stanzas("Package: xy\nPACKAGE: z\n")
        assert info.value.line == 2

    def test_duplicate_allowed_across_stanzas(self):
        assert len(parse_stanzas("A: x\n\nA: y\n")) == 2

    def test_leading_continuation(self):
        with pytest.raises(ContinuationWithoutField) as info:
            parse_stanzas(" floating\n")
        assert info.value.line == 1

    def test_continuation_after_separator(self):
        with pytest.raises(ContinuationWithoutField) as info:
            parse_stanzas("A: x\n\n continued\n")
        assert info.value.line == 3

    @pytest.mark.parametrize("line", ["#weird: x", "-dash: x", "sp ace: x", ": x"])
    def test_bad_field_names(self, line):
        if line.startswith("#"):
            # comment wins over field syntax: the stanza simply has no fields
            assert parse_stanzas(line + "\n") == []
        else:
            with pytest.raises(MalformedField):
                parse_stanzas(line + "\n")


class TestStanzaValue:
    def test_get_is_case_insensitive(self):
        stanza = parse_stanzas("PaCkAgE: xy\n")[0]
        assert stanza.get("package") == "xy"
        assert stanza.get("PACKAGE") == "xy"
        assert "Package" in stanza
        assert stanza.get("missing") is None
        assert stanza.get("missing", "d") == "d"

    def test_casing_preserved_on_render(self):
        stanza = parse_stanzas("PaCkAgE: xy\n")[0]
        assert stanza.render() == "PaCkAgE: xy\n"

    def test_constructor_rejects_duplicates(self):
        with pytest.raises(DuplicateField):
            ControlStanza((ControlField("A", "x"), ControlField("a", "y")))

    def test_constructor_rejects_bad_names(self):
        for name in ("", "a b", "a:b", "#a", "-a"):
            with pytest.raises(MalformedField):
                ControlStanza((ControlField(name, "x"),))

    def test_field_value_invariants(self):
        with pytest.raises(ValueError):
            ControlField("A", " leading")
        with pytest.raises(ValueError):
            ControlField("A", "x\n  ")
        with pytest.raises(ValueError):
            ControlField("A", "x\rs")
        assert ControlField("A", "x\ny").multiline
        assert not ControlField("A", "x").multiline


class TestRender:
    def test_empty_list(self):
        assert render_stanzas([]) == ""

    def test_single_stanza(self):
        stanza = ControlStanza((ControlField("Package", "a"), ControlField("Version", "1")))
        assert render_stanzas([stanza]) == "Package: a\nVersion: 1\n"

    def test_empty_value_renders_bare_colon(self):
        stanza = ControlStanza((ControlField("A", ""),))
        assert stanza.render() == "A:\n"
        assert parse_stanzas("A:\n")[0] == stanza

    def test_exactly_one_blank_line_between_stanzas(self):
        one = ControlStanza((ControlField("A", "x"),))
        two = ControlStanza((ControlField("B", "y"),))
        assert render_stanzas([one, two]) == "A: x\n\nB: y\n"

    def test_stanza_count_preserved(self):
        text = "\n".join(f"A: {i}\n" for i in range(5))
        assert len(parse_stanzas(text)) == 5


@given(stanza_lists)
def test_round_trip(stanzas):
    assert parse_stanzas(render_stanzas(stanzas)) == stanzas


PYCHARM = "Package: maratona-intellij-pycharm\nVersion: 2022.1.4\nArchitecture: amd64\n"


class TestToPackageMeta:
    def test_basic_fields(self):
        meta = to_package_meta(parse_stanzas(PYCHARM)[0])
        assert meta.name == "maratona-intellij-pycharm"
        assert str(meta.version) == "2022.1.4"
        assert meta.architecture == "amd64"
        assert meta.relations == {}
        assert meta.description is None

    def test_missing_version(self):
        stanza = parse_stanzas("Package: xy\nArchitecture: amd64\n")[0]
        with pytest.raises(MissingMandatoryField) as info:
            to_package_meta(stanza)
        assert info.value.field == "Version"

    def test_mandatory_lookup_case_insensitive(self):
        stanza = parse_stanzas("package: xy\nVERSION: 1.0\narchitecture: all\n")[0]
        meta = to_package_meta(stanza)
        assert (meta.name, meta.architecture) == ("xy", "all")

    def test_relations_parsed(self):
        stanza = parse_stanzas(PYCHARM + "Depends: aa | bb, cc\n")[0]
        meta = to_package_meta(stanza)
        expr = meta.relations[RelationKind.DEPENDS]
        assert len(expr.groups) == 2
        assert [atom.name for atom in expr.groups[0]] == ["aa", "bb"]

    def test_all_nine_relation_fields_recognized(self):
        lines = "".join(f"{kind.field_name}: dep-{i:02d}\n" for i, kind in enumerate(RelationKind))
        meta = to_package_meta(parse_stanzas(PYCHARM + lines)[0])
        assert set(meta.relations) == set(RelationKind)
        assert len(meta.extra.entries) == 0

    @pytest.mark.parametrize("name", ["X", "a", "UPPER", "has space", ".dot"])
    def test_bad_package_name(self, name):
        stanza = ControlStanza(
            (
                ControlField("Package", name),
                ControlField("Version", "1.0"),
                ControlField("Architecture", "amd64"),
            )
        )
        with pytest.raises(BadPackageName):
            to_package_meta(stanza)

    def test_version_errors_propagate(self):
        stanza = parse_stanzas("Package: xy\nVersion: 1.0 beta\nArchitecture: amd64\n")[0]
        with pytest.raises(VersionError):
            to_package_meta(stanza)

    def test_relation_errors_propagate(self):
        stanza = parse_stanzas(PYCHARM + "Depends: aa (\n")[0]
        with pytest.raises(RelationError):
            to_package_meta(stanza)

    def test_extra_fields_preserved_in_order(self):
        text = PYCHARM + "Homepage: https://example.org\nSection: devel\nInstalled-Size: 12\n"
        meta = to_package_meta(parse_stanzas(text)[0])
        assert meta.extra.names() == ["Homepage", "Section", "Installed-Size"]

    def test_description_captured(self):
        meta = to_package_meta(parse_stanzas(PYCHARM + "Description: one\n two\n")[0])
        assert meta.description == "one\ntwo"

    def test_stanza_round_trip(self, maratona_metas):
        for meta in maratona_metas.values():
            assert to_package_meta(meta.to_stanza()) == meta

    def test_to_stanza_orders_relations_canonically(self, maratona_metas):
        stanza = maratona_metas["maratona-kairos"].to_stanza()
        assert stanza.names() == [
            "Package",
            "Version",
            "Architecture",
            "Depends",
            "Provides",
            "Conflicts",
            "Description",
        ]
