import pytest

from twindesc import load_corpus, parse_text, render
from twindesc.model import InstanceMode, NodeKind, Severity, TimeScale, UsageMode
from twindesc.parser import IDENT, PUNCT, STRING, SourceFile, parse, tokenize


def codes(result):
    return [(d.code, d.location) for d in result.diagnostics]


def test_minimal():
    r = parse_text('digital_twin "X" {}')
    assert r.ok and r.diagnostics == ()
    d = r.description
    assert d.name == "X"
    assert d.sus is None and d.data is None and d.constellation is None


def test_smart_clamp_contents(clamp):
    c = clamp.constellation
    assert [n.name for n in c.usages] == [
        "Estimate Correlations", "Improve Smart Clamp Control", "Historical Metrics",
        "Streaming Metrics", "Estimate Plate Deflection", "Estimate Tool Wear"]
    assert [n.name for n in c.enablers] == [
        "History Store", "Dashboard", "Vision Algorithm", "Tool Wear Estimator"]
    assert clamp.multiplicity.dt_instances is InstanceMode.PER_USAGE
    assert clamp.multiplicity.sus_entities == 1
    assert clamp.data.none_declared == {"manual"}
    assert clamp.actions.none_declared == {"automatic"}
    assert c.node("Estimate Correlations").mode is UsageMode.HISTORICAL
    assert c.node("Dashboard").time_scale is TimeScale.REAL_TIME
    assert c.node("Hole Photos").keyword == "datum"
    assert len(clamp.evolution) == 4


def test_smart_clamp_is_clean():
    src = SourceFile.read(str(pytest.importorskip("twindesc").corpus_path("smart_clamp.dtd")))
    assert parse(src).diagnostics == ()


def test_undeclared_flow_endpoint():
    text = ('digital_twin "X" {\n'
            '  enabler "Dashboard" {}\n'
            '  flow "ghost" -> "Dashboard"\n'
            '}\n')
    r = parse_text(text)
    assert not r.ok
    assert codes(r) == [("E004", (3, 8))]


def test_syntax_error_location():
    r = parse_text('digital_twin "X" {\n  sus { system "S" }\n}\n')
    assert codes(r) == [("E001", (2, 16))]
    assert "expected ':'" in r.diagnostics[0].message


def test_duplicate_block():
    r = parse_text('digital_twin "X" {\n  evolution {}\n  evolution {}\n}\n')
    assert codes(r) == [("E002", (3, 3))]


def test_duplicate_node():
    r = parse_text('digital_twin "X" {\n  model "A"\n  datum "A"\n}\n')
    assert codes(r) == [("E002", (3, 9))]


def test_unknown_keyword():
    r = parse_text('digital_twin "X" {\n  gizmo {}\n}\n')
    assert codes(r) == [("E003", (2, 3))]


def test_unterminated_string():
    r = parse_text('digital_twin "X" {\n  model "A\n}\n')
    assert ("E005", (2, 9)) in codes(r)


def test_bad_escape_and_character():
    r = parse_text('digital_twin "X\\q" { $ }')
    assert [d.code for d in r.diagnostics][:2] == ["E001", "E001"]


def test_empty_name_rejected():
    assert not parse_text('digital_twin "" {}').ok


def test_nonpositive_count_rejected():
    assert not parse_text('digital_twin "X" { multiplicity { sus_entities: 0 } }').ok


def test_at_after_none_rejected():
    assert not parse_text('digital_twin "X" { data { automatic none @ real_time } }').ok


def test_trailing_garbage():
    r = parse_text('digital_twin "X" {}\nmodel "A"\n')
    assert [d.code for d in r.errors] == ["E001"]


def test_recovery_reports_later_blocks():
    text = ('digital_twin "X" {\n'
            '  sus { system "S" }\n'
            '  usage "U" { mode: sideways }\n'
            '  enabler "E" {}\n'
            '  flow "E" -> "U"\n'
            '  flow "E" -> "nowhere"\n'
            '  gizmo {}\n'
            '}\n')
    r = parse_text(text)
    assert [(d.code, d.location[0]) for d in r.diagnostics] == [
        ("E001", 2), ("E003", 3), ("E004", 6), ("E003", 7)]


def test_broken_usage_body_keeps_its_name():
    text = ('digital_twin "X" {\n'
            '  usage "U" { mode historical }\n'
            '  enabler "E" {}\n'
            '  flow "E" -> "U"\n'
            '}\n')
    assert [d.code for d in parse_text(text).diagnostics] == ["E001"]


def test_duplicate_lifecycle_ids_warn():
    r = parse_text('digital_twin "X" { usage "U" { lifecycle: design, design } }')
    assert r.ok
    assert [d.code for d in r.diagnostics] == ["W001"]
    assert r.diagnostics[0].severity is Severity.WARNING
    assert r.description.constellation.node("U").lifecycles == ("design",)


def test_crlf_and_comments():
    r = parse_text('# head\r\ndigital_twin "X" { # c\r\n  model "M" # c\r\n}\r\n')
    assert r.ok
    assert r.description.constellation.node("M").kind is NodeKind.MODEL_DATA


def test_escapes():
    r = parse_text(r'digital_twin "a\"b\\c\nd\te" {}')
    assert r.description.name == 'a"b\\c\nd\te'


def test_tokenizer_positions():
    toks, diags = tokenize('flow "a" -> "b"')
    assert diags == []
    assert [(t.kind, t.value, t.col) for t in toks[:4]] == [
        (IDENT, "flow", 1), (STRING, "a", 6), (PUNCT, "->", 10), (STRING, "b", 13)]


@pytest.mark.parametrize("text", [
    "", "digital_twin", 'digital_twin "X"', 'digital_twin "X" {', '"X" {}',
    'digital_twin "X" { usage "U" {', 'digital_twin "X" { data { automatic } }',
    'digital_twin "X" { flow "a" -> }', 'digital_twin "X" { fidelity { "U" "n" } }',
    'digital_twin "X" { lifecycle { design "U" } }', "\n\n\n",
])
def test_diagnostics_stay_in_bounds(text):
    r = parse_text(text)
    assert not r.ok
    lines = text.split("\n")
    for d in r.diagnostics:
        line, col = d.location
        assert 1 <= line <= len(lines)
        assert 1 <= col <= len(lines[line - 1]) + 1


def test_render_is_single_top_level_block(clamp):
    text = render(clamp)
    assert text.count("digital_twin ") == 1
    assert text.startswith('digital_twin "Smart Clamp Drilling Machine" {\n')
    assert text.endswith("}\n")


def test_render_round_trips_corpus():
    for name in ("smart_clamp.dtd", "smart_clamp_partial.dtd", "human_robot.dtd",
                 "minimal.dtd"):
        d = load_corpus(name)
        again = parse_text(render(d))
        assert again.diagnostics == ()
        assert again.description == d
