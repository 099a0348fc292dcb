"""SVG drawings of straight-line maps."""

from collections.abc import Mapping, Sequence
from xml.sax.saxutils import escape

from pytutte.domain.models.embedding import Point
from pytutte.domain.models.plane_graph import PlaneGraph
from pytutte.domain.models.validation import ValidationReport

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<svg width="%(width).2f" height="%(height).2f" viewBox="%(min_x).6f %(min_y).6f %(box_w).6f %(box_h).6f" \
version="1.1" xmlns="http://www.w3.org/2000/svg">
<!-- y axis flipped: math coordinates are y-up, SVG is y-down, so counterclockwise faces appear clockwise -->
<rect x="%(min_x).6f" y="%(min_y).6f" width="%(box_w).6f" height="%(box_h).6f" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

EDGE_COLOUR = "#000000"
OUTER_COLOUR = "#1f5fbf"
FAULT_COLOUR = "#d62728"
VERTEX_COLOUR = "#333333"


class SvgCanvas:
    """Collects drawing commands in math coordinates and writes them with the y axis flipped."""

    def __init__(self, size: float = 500.0) -> None:
        """
        Start an empty drawing.

        Args:
            size: Width in user units of the longer side of the finished picture.

        """
        self.size = size
        self.min_x: float | None = None
        self.max_x: float | None = None
        self.min_y: float | None = None
        self.max_y: float | None = None
        self.commands: list[str] = []
        self.dots: list[tuple[float, float, str, str | None]] = []

    def require(self, x: float, y: float) -> None:
        """Grow the bounding box to contain a point given in flipped coordinates."""
        if self.min_x is None or self.max_x is None or self.min_y is None or self.max_y is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    def line(self, a: Point, b: Point, colour: str = EDGE_COLOUR, width: float = 1.0) -> None:
        """A straight segment."""
        (x1, y1), (x2, y2) = (a[0], -a[1]), (b[0], -b[1])
        self.require(x1, y1)
        self.require(x2, y2)
        self.commands.append(
            f'<line x1="{x1:.6f}" y1="{y1:.6f}" x2="{x2:.6f}" y2="{y2:.6f}" '
            f'style="stroke:{colour};stroke-width:{width:g}" vector-effect="non-scaling-stroke"/>'
        )

    def polygon(self, points: Sequence[Point], colour: str = OUTER_COLOUR, width: float = 2.5) -> None:
        """A closed outline."""
        flipped = [(x, -y) for x, y in points]
        for x, y in flipped:
            self.require(x, y)
        self.commands.append(
            '<polygon points="%s" style="fill:none;stroke:%s;stroke-width:%g" vector-effect="non-scaling-stroke"/>'
            % (" ".join(f"{x:.6f},{y:.6f}" for x, y in flipped), colour, width)
        )

    def dot(self, centre: Point, label: str | None = None, colour: str = VERTEX_COLOUR) -> None:
        """A vertex marker with an optional label; both are sized when the picture is rendered."""
        x, y = centre[0], -centre[1]
        self.require(x, y)
        self.dots.append((x, y, colour, label))

    def render(self) -> str:
        """The finished document."""
        if self.min_x is None or self.max_x is None or self.min_y is None or self.max_y is None:
            self.min_x = self.max_x = self.min_y = self.max_y = 0.0
        extent = max(self.max_x - self.min_x, self.max_y - self.min_y) or 1.0
        pad = extent * 0.1
        min_x, min_y = self.min_x - pad, self.min_y - pad
        box_w = self.max_x - self.min_x + 2 * pad
        box_h = self.max_y - self.min_y + 2 * pad
        zoom = self.size / max(box_w, box_h)
        width, height = box_w * zoom, box_h * zoom
        radius, font = extent * 0.012, extent * 0.035
        lines = list(self.commands)
        for x, y, colour, label in self.dots:
            lines.append(f'<circle cx="{x:.6f}" cy="{y:.6f}" r="{radius:.6f}" style="fill:{colour}"/>')
            if label is not None:
                lines.append(
                    f'<text x="{x + radius:.6f}" y="{y - radius:.6f}" font-size="{font:.6f}" '
                    f'font-family="monospace" fill="#666666">{escape(label)}</text>'
                )
        header = PREAMBLE % {
            "width": width,
            "height": height,
            "min_x": min_x,
            "min_y": min_y,
            "box_w": box_w,
            "box_h": box_h,
        }
        return header + "".join(line + "\n" for line in lines) + POSTAMBLE


def render_svg(
    g: PlaneGraph, coords: Mapping[str, Point], report: ValidationReport | None = None, labels: bool = True
) -> str:
    """
    Draw a straight-line map: edges as segments, vertices as dots and the outer boundary highlighted.

    Args:
        g: The plane graph.
        coords: A point for every vertex.
        report: When given, edges involved in a violation are drawn in the fault colour.
        labels: Write vertex ids next to their dots.

    Returns:
        The SVG document.

    """
    faulty: set[tuple[str, str]] = set()
    if report is not None:
        faulty.update(report.degenerate_edges)
        for pair in report.crossing_or_overlapping_edge_pairs:
            faulty.update((pair.first, pair.second))
        faulty.update(edge for _, edge in report.vertex_on_edge)
    canvas = SvgCanvas()
    for u, v in g.sorted_edges:
        canvas.line(coords[u], coords[v], FAULT_COLOUR if (u, v) in faulty else EDGE_COLOUR)
    if len(g.outer_cycle) >= 3:
        canvas.polygon([coords[v] for v in g.outer_cycle])
    for v in g.vertex_ids:
        canvas.dot(coords[v], v if labels else None)
    return canvas.render()
