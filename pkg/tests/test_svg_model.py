"""Parsing, primitive conversion, serialization, validation, renumbering."""

import numpy as np
import pytest

from svgsmith import geom
from svgsmith.errors import DegenerateShapeError, DisallowedElementError, SvgParseError
from svgsmith.model import (
    CommandKind,
    PrimitiveElement,
    Rgba,
    parse_svg,
    parse_transform,
    primitive_to_cubics,
    renumber_ids,
    serialize,
    validate_template,
)
from svgsmith.model.validate import (
    BAD_VIEWBOX,
    DISALLOWED_ELEMENT,
    DUPLICATE_ID,
    NON_HEX_COLOR,
    NONSEQUENTIAL_ID,
    PATH_TOO_LONG,
    UNCLOSED_PATH,
)


def sample_path_points(path, n=400):
    """Dense samples along every cubic of a path (transform applied)."""
    ts = np.linspace(0.0, 1.0, n)
    return np.concatenate([geom.bezier_point(c, ts) for c in path.cubics()])


class TestParse:
    def test_unicorn_has_14_primitives(self, unicorn_text):
        doc, prims = parse_svg(unicorn_text)
        assert len(prims) == 14
        assert doc.ids() == [f"path_{i}" for i in range(1, 15)]
        assert (doc.width, doc.height) == (512, 512)

    def test_unicorn_labels_come_from_comments(self, unicorn_text):
        doc, _ = parse_svg(unicorn_text)
        assert doc.paths[0].semantic_label == "Body"
        assert doc.paths[9].semantic_label == "Horn"
        assert doc.paths[10].semantic_label == "Unicorn mouth"

    def test_empty_document(self):
        doc, prims = parse_svg('<svg viewBox="0 0 512 512"/>')
        assert doc.paths == [] and prims == []
        assert doc.viewbox == (0.0, 0.0, 512.0, 512.0)

    def test_disallowed_element_named(self):
        text = '<svg viewBox="0 0 512 512"><text x="1" y="1">hi</text></svg>'
        with pytest.raises(DisallowedElementError) as err:
            parse_svg(text)
        assert err.value.tag == "text"

    def test_malformed_xml_reports_position(self):
        with pytest.raises(SvgParseError) as err:
            parse_svg("<svg><rect</svg>")
        assert err.value.line is not None

    def test_fill_none_and_stroke(self, unicorn_text):
        doc, _ = parse_svg(unicorn_text)
        tail = doc.path_by_id("path_9")
        assert tail.fill.a == 0.0
        assert tail.stroke.width == 8.0
        assert not tail.closed

    def test_transform_parsing(self):
        m = parse_transform("translate(10, 20) scale(2)")
        assert np.allclose(m, [[2, 0, 10], [0, 2, 20]])
        m = parse_transform("rotate(90)")
        assert np.allclose(m, [[0, -1, 0], [1, 0, 0]], atol=1e-12)
        with pytest.raises(SvgParseError):
            parse_transform("skewX(10)")


class TestPrimitiveConversion:
    def test_rect_is_four_straight_cubics(self):
        elem = PrimitiveElement("rect", {"x": "0", "y": "0", "width": "30", "height": "10"})
        path = primitive_to_cubics(elem)
        kinds = [c.kind for c in path.commands]
        assert kinds == [CommandKind.MOVE] + [CommandKind.CUBIC] * 4
        assert path.closed
        # Off-curve controls sit at the 1/3 and 2/3 points of each edge.
        top = path.cubics()[0]
        assert np.allclose(top, [[0, 0], [10, 0], [20, 0], [30, 0]])

    def test_circle_radial_error(self):
        elem = PrimitiveElement("circle", {"cx": "256", "cy": "256", "r": "100"})
        path = primitive_to_cubics(elem)
        assert len(path.cubics()) == 4
        pts = sample_path_points(path, n=2500)
        radii = np.linalg.norm(pts - [256, 256], axis=1)
        assert np.max(np.abs(radii - 100.0)) < 0.0003 * 100.0

    def test_ellipse_radial_error(self):
        elem = PrimitiveElement("ellipse", {"cx": "0", "cy": "0", "rx": "120", "ry": "50"})
        path = primitive_to_cubics(elem)
        pts = sample_path_points(path, n=2500)
        # Implicit-equation residual scaled back to spatial units.
        val = (pts[:, 0] / 120.0) ** 2 + (pts[:, 1] / 50.0) ** 2
        assert np.max(np.abs(np.sqrt(val) - 1.0)) * 120.0 < 0.0003 * 120.0

    def test_polyline_open(self):
        elem = PrimitiveElement("polyline", {"points": "0,0 10,0 10,10"})
        path = primitive_to_cubics(elem)
        assert len(path.cubics()) == 2
        assert not path.closed

    def test_line_elevation_exact(self):
        elem = PrimitiveElement("line", {"x1": "1", "y1": "2", "x2": "7", "y2": "9"})
        path = primitive_to_cubics(elem)
        ts = np.linspace(0, 1, 100)
        pts = geom.bezier_point(path.cubics()[0], ts)
        expected = np.array([1, 2]) + ts[:, None] * np.array([6, 7])
        assert np.max(np.abs(pts - expected)) < 1e-9

    def test_polygon_closes(self):
        elem = PrimitiveElement("polygon", {"points": "0,0 10,0 5,8"})
        path = primitive_to_cubics(elem)
        assert path.closed
        assert len(path.cubics()) == 3

    def test_degenerate_primitives(self):
        with pytest.raises(DegenerateShapeError):
            primitive_to_cubics(PrimitiveElement("circle", {"cx": "0", "cy": "0", "r": "0"}))
        with pytest.raises(DegenerateShapeError):
            primitive_to_cubics(PrimitiveElement("polyline", {"points": "4,4"}))

    def test_quadratic_and_arc_path_data(self):
        elem = PrimitiveElement("path", {"d": "M 0 0 Q 5 10 10 0"})
        path = primitive_to_cubics(elem)
        assert [c.kind for c in path.commands] == [CommandKind.MOVE, CommandKind.CUBIC]
        # Arc: half-circle from (0,0) to (20,0), radius 10.
        elem = PrimitiveElement("path", {"d": "M 0 0 A 10 10 0 0 1 20 0"})
        path = primitive_to_cubics(elem)
        pts = sample_path_points(path, n=500)
        radii = np.linalg.norm(pts - [10, 0], axis=1)
        assert np.max(np.abs(radii - 10.0)) < 0.01

    def test_relative_commands(self):
        elem = PrimitiveElement("path", {"d": "m 5 5 l 10 0 v 10 h -10 z"})
        path = primitive_to_cubics(elem)
        assert path.closed
        ends = [c.points[-1] for c in path.commands[1:]]
        assert np.allclose(ends, [[15, 5], [15, 15], [5, 15], [5, 5]])


class TestSerialize:
    def test_round_trip_unicorn(self, unicorn_text):
        doc, _ = parse_svg(unicorn_text)
        text = serialize(doc)
        doc2, _ = parse_svg(text)
        assert doc2 == doc

    def test_round_trip_twice_stable(self, unicorn_text):
        doc, _ = parse_svg(unicorn_text)
        once = serialize(doc)
        again = serialize(parse_svg(once)[0])
        assert once == again

    def test_red_fill_hex(self):
        doc, _ = parse_svg('<svg viewBox="0 0 512 512"><rect id="path_1" x="0" y="0" width="9" height="9" fill="#ff0000"/></svg>')
        text = serialize(doc)
        assert 'fill="#FF0000"' in text

    def test_d_attribute_shape(self):
        doc, _ = parse_svg('<svg viewBox="0 0 512 512"><line id="path_1" x1="0" y1="0" x2="8" y2="0" stroke="#000000"/></svg>')
        text = serialize(doc)
        d = text.split(' d="')[1].split('"')[0]
        assert d.startswith("M 0 0 C ")

    def test_fill_opacity_round_trip(self):
        doc, _ = parse_svg(
            '<svg viewBox="0 0 512 512">'
            '<rect id="path_1" x="0" y="0" width="9" height="9" fill="#336699" fill-opacity="0.25"/>'
            "</svg>"
        )
        doc2, _ = parse_svg(serialize(doc))
        assert doc2.paths[0].fill == Rgba(0x33 / 255, 0x66 / 255, 0x99 / 255, 0.25)


class TestValidate:
    def test_unicorn_passes(self, unicorn_text):
        doc, prims = parse_svg(unicorn_text)
        report = validate_template(doc, prims)
        assert report.ok, report.summary()
        assert report.warnings == []

    @pytest.mark.parametrize(
        "mutate,code",
        [
            (lambda t: t.replace('viewBox="0 0 512 512"', 'viewBox="0 0 256 256"'), BAD_VIEWBOX),
            (lambda t: t.replace('id="path_3"', 'id="path_2"'), DUPLICATE_ID),
            (lambda t: t.replace('id="path_14"', 'id="path_15"'), NONSEQUENTIAL_ID),
            (lambda t: t.replace('fill="#ffff00"', 'fill="yellow"'), NON_HEX_COLOR),
            (
                lambda t: t.replace(
                    'd="M 337 178 Q 342 183 347 178"',
                    'd="M 337 178 L 1 1 L 2 2 L 3 3 L 4 4 L 5 5 L 6 6"',
                ),
                PATH_TOO_LONG,
            ),
            (
                lambda t: t.replace(
                    'd="M 337 178 Q 342 183 347 178" fill="none" stroke="#000000" stroke-width="2"',
                    'd="M 337 178 L 342 183 L 347 178" fill="#112233"',
                ),
                UNCLOSED_PATH,
            ),
        ],
    )
    def test_single_violation_rejected(self, unicorn_text, mutate, code):
        doc, prims = parse_svg(mutate(unicorn_text))
        report = validate_template(doc, prims)
        assert [e.code for e in report.errors] == [code]

    def test_disallowed_tag_flagged(self, unicorn_text):
        doc, prims = parse_svg(unicorn_text)
        prims[3] = PrimitiveElement("text", {}, id="path_4")
        report = validate_template(doc, prims)
        assert any(e.code == DISALLOWED_ELEMENT for e in report.errors)

    def test_missing_comment_warns(self):
        doc, prims = parse_svg(
            '<svg viewBox="0 0 512 512"><rect id="path_1" x="0" y="0" width="9" height="9" fill="#ff0000"/></svg>'
        )
        report = validate_template(doc, prims)
        assert report.ok
        assert len(report.warnings) == 1


class TestRenumber:
    def _doc_with_ids(self, ids):
        body = "".join(
            f'<rect id="{i}" x="0" y="0" width="9" height="9" fill="#ff0000"/>' for i in ids
        )
        return parse_svg(f'<svg viewBox="0 0 512 512">{body}</svg>')[0]

    def test_gap_renumbering(self):
        doc = self._doc_with_ids(["path_1", "path_2", "path_4", "path_5"])
        mapping = renumber_ids(doc)
        assert doc.ids() == ["path_1", "path_2", "path_3", "path_4"]
        assert mapping == {"path_4": "path_3", "path_5": "path_4"}

    def test_identity(self):
        doc = self._doc_with_ids(["path_1", "path_2"])
        assert renumber_ids(doc) == {}

    def test_empty(self):
        doc, _ = parse_svg('<svg viewBox="0 0 512 512"/>')
        assert renumber_ids(doc) == {}

    def test_idempotent(self):
        doc = self._doc_with_ids(["path_9", "path_1", "path_3"])
        renumber_ids(doc)
        snapshot = doc.ids()
        assert renumber_ids(doc) == {}
        assert doc.ids() == snapshot
