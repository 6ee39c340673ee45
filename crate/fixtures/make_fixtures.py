"""Regenerates the chart specs and rendered SVGs in this directory.

Each SVG follows the class conventions the anchor directives target for its
grammar. Run from anywhere: python3 fixtures/make_fixtures.py
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent

SIZES = {"plotly": (700, 450), "vl": (400, 300), "echarts": (600, 400)}

SCATTER = {
    "title": "Horsepower and fuel efficiency of cars",
    "x_title": "Horsepower",
    "y_title": "Miles per gallon",
    "x": [130, 165, 150, 95, 88, 46, 190, 110],
    "y": [18, 15, 16, 24, 27, 26, 14, 21],
}

BAR = {
    "title": "Monthly sales per store",
    "x_title": "Store",
    "y_title": "Units sold",
    "x": ["Oslo", "Bergen", "Trondheim", "Stavanger", "Tromso", "Bodo"],
    "y": [28, 55, 43, 91, 81, 53],
}

MATRIX = {
    "title": "Change in employment by sector",
    "x_title": "Year",
    "y_title": "Sector",
    "legend_title": "Change (%)",
    "years": ["2019", "2020", "2021", "2022"],
    "sectors": ["Retail", "Health", "Tech"],
    # rows = sectors, columns = years
    "values": [[1.5, -8.2, 3.1, 0.4], [2.2, 4.8, 1.9, 2.6], [6.4, 2.1, 9.3, -1.7]],
    "colors": ["#d73027", "#1a9850"],
    "domain": [-10, 10],
}

TREEMAP = {
    "title": "Population of European regions (millions)",
    "tree": [
        ("North", [("Norway", 5.4), ("Sweden", 10.4), ("Finland", 5.5)]),
        ("South", [("Italy", 59.0), ("Spain", 47.4)]),
        ("West", [("France", 67.8), ("Germany", 83.2)]),
    ],
}

HORIZON = {
    "title": "Average temperature in Oslo, Norway in 2018",
    "x_title": "Month",
    "y_title": "Average temperature in °C",
    "months": ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"],
    "temps": [-3.5, -5.5, -3.6, 5.6, 14.5, 15.8, 20.6, 16.5, 11.5, 6.0, 2.9, -1.0],
    "colors": ["#2166ac", "#1a9850"],
    "domain": [-6, 21],
}


def write_json(name, obj):
    (OUT / name).write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def fmt(v):
    v = round(v, 2)
    return str(int(v)) if v == int(v) else str(v)


def esc(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


class Svg:
    def __init__(self, width, height, root_class=""):
        self.w, self.h = width, height
        cls = f' class="{root_class}"' if root_class else ""
        self.parts = [f'<svg xmlns="http://www.w3.org/2000/svg"{cls} width="{width}" height="{height}" viewBox="0 0 {width} {height}">']
        self.parts.append(f'  <rect class="background" x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>')

    def add(self, line):
        self.parts.append("  " + line)

    def text(self, cls, x, y, s, size=12, anchor="start", extra=""):
        return f'<text class="{cls}" x="{fmt(x)}" y="{fmt(y)}" font-size="{size}" text-anchor="{anchor}"{extra}>{esc(s)}</text>'

    def save(self, name):
        self.parts.append("</svg>")
        (OUT / name).write_text("\n".join(self.parts) + "\n", encoding="utf-8")


MARGIN = {"left": 90, "top": 50, "right": 110, "bottom": 50}


def plot_box(w, h):
    return MARGIN["left"], MARGIN["top"], w - MARGIN["left"] - MARGIN["right"], h - MARGIN["top"] - MARGIN["bottom"]


def lerp_color(c0, c1, t):
    a = [int(c0[i : i + 2], 16) for i in (1, 3, 5)]
    b = [int(c1[i : i + 2], 16) for i in (1, 3, 5)]
    return "#" + "".join(f"{round(x + (y - x) * t):02x}" for x, y in zip(a, b))


# Per-grammar DOM wrappers.
STYLE = {
    "plotly": {
        "root": "main-svg",
        "title": lambda s: s.text("gtitle", s.w / 2, 28, s.title, 17, "middle"),
        "x_title": lambda s, t: f'<g class="g-xtitle">{s.text("xtitle", s.px + s.pw / 2, s.h - 12, t, 14, "middle")}</g>',
        "y_title": lambda s, t: f'<g class="g-ytitle">{s.text("ytitle", 8, s.py - 12, t, 14)}</g>',
        "info_open": '<g class="infolayer">',
        "info_close": "</g>",
        "legend_class": "colorbar",
        "legend_title_class": "cbtitle",
        "marks": {
            "scatter": ('<g class="scatterlayer mlayer"><g class="trace scatter"><g class="points">', "</g></g></g>"),
            "bar": ('<g class="barlayer mlayer"><g class="trace bars">', "</g></g>"),
            "matrix": ('<g class="heatmaplayer mlayer"><g class="hm cells">', "</g></g>"),
            "treemap": ('<g class="treemaplayer"><g class="trace treemap"><g class="slices">', "</g></g></g>"),
            "horizon": ('<g class="scatterlayer mlayer"><g class="trace scatter">', "</g></g>"),
        },
    },
    "vl": {
        "root": "marks",
        "title": lambda s: f'<g class="mark-group role-title"><text class="role-title-text" x="{fmt(s.w / 2)}" y="22" font-size="13" text-anchor="middle">{esc(s.title)}</text></g>',
        "x_title": lambda s, t: f'<g class="mark-group role-axis x-axis">{s.text("role-axis-title", s.px + s.pw / 2, s.h - 10, t, 11, "middle")}</g>',
        "y_title": lambda s, t: f'<g class="mark-group role-axis y-axis">{s.text("role-axis-title", 4, s.py - 10, t, 11)}</g>',
        "info_open": "",
        "info_close": "",
        "legend_class": "mark-group role-legend",
        "legend_title_class": "role-legend-title",
        "marks": {
            "scatter": ('<g class="mark-symbol role-mark">', "</g>"),
            "bar": ('<g class="mark-rect role-mark">', "</g>"),
            "matrix": ('<g class="mark-rect role-mark">', "</g>"),
            "treemap": ('<g class="mark-rect role-mark">', "</g>"),
            "horizon": ('<g class="mark-area role-mark">', "</g>"),
        },
    },
    "echarts": {
        "root": "",
        "title": lambda s: s.text("ec-title", s.w / 2, 24, s.title, 16, "middle"),
        "x_title": lambda s, t: f'<g class="ec-x-axis">{s.text("ec-axis-name", s.px + s.pw + 6, s.py + s.ph + 4, t, 12)}</g>',
        "y_title": lambda s, t: f'<g class="ec-y-axis">{s.text("ec-axis-name", s.px, s.py - 14, t, 12, "middle")}</g>',
        "info_open": "",
        "info_close": "",
        "legend_class": "ec-visual-map",
        "legend_title_class": "ec-visual-map-title",
        "marks": {k: ('<g class="ec-series">', "</g>") for k in ["scatter", "bar", "matrix", "treemap", "horizon"]},
    },
}


def render(grammar, kind, name, title, x_title=None, y_title=None, marks=None, legend=None, ticks=None):
    w, h = SIZES[grammar]
    st = STYLE[grammar]
    s = Svg(w, h, st["root"])
    s.title = title
    s.px, s.py, s.pw, s.ph = plot_box(w, h)
    for t in ticks or []:
        s.add(t)
    open_, close = st["marks"][kind]
    body = marks(s)
    s.add(f'<g class="plot" transform="translate({s.px},{s.py})">{open_}')
    for m in body:
        s.add("  " + m)
    s.add(f"{close}</g>")
    info = []
    if title is not None:
        info.append(st["title"](s))
    if x_title:
        info.append(st["x_title"](s, x_title))
    if y_title:
        info.append(st["y_title"](s, y_title))
    if legend:
        c0, c1, ltitle = legend
        lx, ly = w - MARGIN["right"] + 30, s.py + 20
        inner = []
        if ltitle:
            inner.append(s.text(st["legend_title_class"], lx, ly - 6, ltitle, 11))
        for i in range(5):
            inner.append(f'<rect x="{lx}" y="{ly + i * 20}" width="16" height="20" fill="{lerp_color(c1, c0, i / 4)}"/>')
        info.append(f'<g class="{st["legend_class"]}">' + "".join(inner) + "</g>")
    if st["info_open"]:
        s.add(st["info_open"])
        for i in info:
            s.add("  " + i)
        s.add(st["info_close"])
    else:
        for i in info:
            s.add(i)
    s.save(name)


def scatter_marks(s):
    xs, ys = SCATTER["x"], SCATTER["y"]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    out = []
    for x, y in zip(xs, ys):
        cx = (x - x0) / (x1 - x0) * s.pw
        cy = s.ph - (y - y0) / (y1 - y0) * s.ph
        out.append(f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="5" fill="#4c78a8"/>')
    return out


def bar_marks(s):
    n = len(BAR["y"])
    band = s.pw / n
    top = max(BAR["y"])
    out = []
    for i, v in enumerate(BAR["y"]):
        bh = v / top * s.ph
        out.append(f'<rect x="{fmt(i * band + band * 0.1)}" y="{fmt(s.ph - bh)}" width="{fmt(band * 0.8)}" height="{fmt(bh)}" fill="#4c78a8"/>')
    return out


def matrix_marks(s):
    rows, cols = len(MATRIX["sectors"]), len(MATRIX["years"])
    cw, ch = s.pw / cols, s.ph / rows
    lo, hi = MATRIX["domain"]
    out = []
    for r in range(rows):
        for c in range(cols):
            v = MATRIX["values"][r][c]
            color = lerp_color(*MATRIX["colors"], (v - lo) / (hi - lo))
            out.append(f'<rect x="{fmt(c * cw)}" y="{fmt(r * ch)}" width="{fmt(cw)}" height="{fmt(ch)}" fill="{color}"/>')
    return out


def treemap_marks(s):
    total = sum(v for _, kids in TREEMAP["tree"] for _, v in kids)
    out, x = [], 0.0
    for _, kids in TREEMAP["tree"]:
        gsum = sum(v for _, v in kids)
        gw = gsum / total * s.pw
        y = 0.0
        for label, v in kids:
            kh = v / gsum * s.ph
            out.append(f'<rect x="{fmt(x)}" y="{fmt(y)}" width="{fmt(gw)}" height="{fmt(kh)}" fill="#9ecae9" stroke="#ffffff"/>')
            y += kh
        x += gw
    return out


def treemap_labels(s):
    total = sum(v for _, kids in TREEMAP["tree"] for _, v in kids)
    out, x = [], 0.0
    for _, kids in TREEMAP["tree"]:
        gsum = sum(v for _, v in kids)
        gw = gsum / total * s.pw
        y = 0.0
        for label, v in kids:
            kh = v / gsum * s.ph
            out.append(s.text("slicetext", s.px + x + 4, s.py + y + 14, label, 10))
            y += kh
        x += gw
    return out


def horizon_marks(s):
    n = len(HORIZON["temps"])
    cw = s.pw / n
    lo, hi = HORIZON["domain"]
    out = []
    for i, v in enumerate(HORIZON["temps"]):
        scale = hi if v >= 0 else -lo
        bh = abs(v) / scale * s.ph
        color = HORIZON["colors"][1] if v >= 0 else HORIZON["colors"][0]
        out.append(f'<rect x="{fmt(i * cw)}" y="{fmt(s.ph - bh)}" width="{fmt(cw)}" height="{fmt(bh)}" fill="{color}"/>')
    return out


def x_ticks(labels):
    def make(s):
        step = s.pw / len(labels)
        return [s.text("tick", s.px + step * (i + 0.5), s.py + s.ph + 16, str(l), 10, "middle") for i, l in enumerate(labels)]

    return make


def specs():
    sc, bar, mx, tm, hz = SCATTER, BAR, MATRIX, TREEMAP, HORIZON

    write_json("scatter.plotly.json", {
        "data": [{"type": "scatter", "mode": "markers", "x": sc["x"], "y": sc["y"]}],
        "layout": {"title": {"text": sc["title"]}, "xaxis": {"title": {"text": sc["x_title"]}}, "yaxis": {"title": {"text": sc["y_title"]}}},
    })
    write_json("scatter.vl.json", {
        "$schema": "https://vega.github.io/schema/vega-lite/v5.json",
        "title": sc["title"],
        "data": {"values": [{"horsepower": x, "mpg": y} for x, y in zip(sc["x"], sc["y"])]},
        "mark": "point",
        "encoding": {
            "x": {"field": "horsepower", "type": "quantitative", "title": sc["x_title"]},
            "y": {"field": "mpg", "type": "quantitative", "title": sc["y_title"]},
        },
    })
    write_json("scatter.echarts.json", {
        "title": {"text": sc["title"]},
        "xAxis": {"type": "value", "name": sc["x_title"]},
        "yAxis": {"type": "value", "name": sc["y_title"]},
        "series": [{"type": "scatter", "data": [[x, y] for x, y in zip(sc["x"], sc["y"])]}],
    })

    write_json("bar.plotly.json", {
        "data": [{"type": "bar", "x": bar["x"], "y": bar["y"]}],
        "layout": {"title": {"text": bar["title"]}, "xaxis": {"title": {"text": bar["x_title"]}}, "yaxis": {"title": {"text": bar["y_title"]}}},
    })
    write_json("bar.vl.json", {
        "$schema": "https://vega.github.io/schema/vega-lite/v5.json",
        "title": bar["title"],
        "data": {"values": [{"store": x, "units": y} for x, y in zip(bar["x"], bar["y"])]},
        "mark": "bar",
        "encoding": {
            "x": {"field": "store", "type": "nominal", "title": bar["x_title"]},
            "y": {"field": "units", "type": "quantitative", "title": bar["y_title"]},
        },
    })
    write_json("bar.echarts.json", {
        "title": {"text": bar["title"]},
        "tooltip": {"trigger": "axis"},
        "xAxis": {"type": "category", "name": bar["x_title"], "data": bar["x"]},
        "yAxis": {"type": "value", "name": bar["y_title"]},
        "series": [{"type": "bar", "data": bar["y"]}],
    })

    cells = [(y, s, mx["values"][si][yi]) for si, s in enumerate(mx["sectors"]) for yi, y in enumerate(mx["years"])]
    write_json("heatmap.vl.json", {
        "$schema": "https://vega.github.io/schema/vega-lite/v5.json",
        "title": mx["title"],
        "data": {"values": [{"year": y, "sector": s, "change": v} for y, s, v in cells]},
        "mark": "rect",
        "encoding": {
            "x": {"field": "year", "type": "ordinal", "title": mx["x_title"]},
            "y": {"field": "sector", "type": "nominal", "title": mx["y_title"]},
            "color": {
                "field": "change",
                "type": "quantitative",
                "title": mx["legend_title"],
                "scale": {"domain": mx["domain"], "range": mx["colors"]},
            },
        },
    })
    write_json("heatmap.echarts.json", {
        "title": {"text": mx["title"]},
        "xAxis": {"type": "category", "name": mx["x_title"], "data": mx["years"]},
        "yAxis": {"type": "category", "name": mx["y_title"], "data": mx["sectors"]},
        "visualMap": {"min": mx["domain"][0], "max": mx["domain"][1], "inRange": {"color": mx["colors"]}},
        "series": [{"type": "heatmap", "data": [[yi, si, mx["values"][si][yi]] for si in range(len(mx["sectors"])) for yi in range(len(mx["years"]))]}],
    })

    write_json("treemap.echarts.json", {
        "title": {"text": tm["title"]},
        "series": [{
            "type": "treemap",
            "data": [{"name": g, "children": [{"name": n, "value": v} for n, v in kids]} for g, kids in tm["tree"]],
        }],
    })
    labels, parents, values = [], [], []
    for g, kids in tm["tree"]:
        labels.append(g)
        parents.append("")
        values.append(round(sum(v for _, v in kids), 1))
    for g, kids in tm["tree"]:
        for n, v in kids:
            labels.append(n)
            parents.append(g)
            values.append(v)
    write_json("treemap.plotly.json", {
        "data": [{"type": "treemap", "labels": labels, "parents": parents, "values": values, "branchvalues": "total"}],
        "layout": {"title": {"text": tm["title"]}},
    })

    write_json("horizon.plotly.json", {
        "data": [{
            "type": "scatter",
            "mode": "lines",
            "fill": "tozeroy",
            "x": hz["months"],
            "y": hz["temps"],
            "marker": {
                "color": hz["temps"],
                "cmin": hz["domain"][0],
                "cmax": hz["domain"][1],
                "colorscale": [[0, hz["colors"][0]], [1, hz["colors"][1]]],
            },
        }],
        "layout": {"title": {"text": hz["title"]}, "xaxis": {"title": {"text": hz["x_title"]}}, "yaxis": {"title": {"text": hz["y_title"]}}},
    })
    write_json("horizon.echarts.json", {
        "title": {"text": hz["title"]},
        "xAxis": {"type": "category", "name": hz["x_title"], "data": hz["months"]},
        "yAxis": {"type": "value", "name": hz["y_title"]},
        "visualMap": {"min": hz["domain"][0], "max": hz["domain"][1], "inRange": {"color": hz["colors"]}},
        "series": [{"type": "custom", "renderItem": "horizonBands", "data": hz["temps"]}],
    })
    values = [{"month": m, "temp": t} for m, t in zip(hz["months"], hz["temps"])]
    color = {"field": "temp", "type": "quantitative", "scale": {"domain": hz["domain"], "range": hz["colors"]}}
    write_json("horizon.vl.json", {
        "$schema": "https://vega.github.io/schema/vega-lite/v5.json",
        "title": hz["title"],
        "data": {"values": values},
        "encoding": {
            "x": {"field": "month", "type": "ordinal", "title": hz["x_title"], "sort": None},
            "y": {"field": "temp", "type": "quantitative", "title": hz["y_title"]},
        },
        "layer": [
            {"mark": {"type": "area", "clip": True}, "encoding": {"color": color}},
            {"mark": {"type": "area", "clip": True, "opacity": 0.6}, "transform": [{"calculate": "datum.temp - 10", "as": "band"}]},
        ],
    })


def svgs():
    for g in ["plotly", "vl", "echarts"]:
        render(g, "scatter", f"scatter.{g}.svg", SCATTER["title"], SCATTER["x_title"], SCATTER["y_title"], scatter_marks)
        render(g, "bar", f"bar.{g}.svg", BAR["title"], BAR["x_title"], BAR["y_title"], bar_marks, ticks=None)
    for g in ["vl", "echarts"]:
        legend_title = MATRIX["legend_title"] if g == "vl" else None
        render(g, "matrix", f"heatmap.{g}.svg", MATRIX["title"], MATRIX["x_title"], MATRIX["y_title"], matrix_marks,
               legend=(MATRIX["colors"][0], MATRIX["colors"][1], legend_title))
    for g in ["plotly", "echarts"]:
        w, h = SIZES[g]
        s = Svg(w, h)
        s.px, s.py, s.pw, s.ph = plot_box(w, h)
        render(g, "treemap", f"treemap.{g}.svg", TREEMAP["title"], marks=treemap_marks, ticks=treemap_labels(s))
    for g in ["plotly", "vl", "echarts"]:
        w, h = SIZES[g]
        s = Svg(w, h)
        s.px, s.py, s.pw, s.ph = plot_box(w, h)
        render(g, "horizon", f"horizon.{g}.svg", HORIZON["title"], HORIZON["x_title"], HORIZON["y_title"], horizon_marks,
               legend=(HORIZON["colors"][0], HORIZON["colors"][1], None), ticks=x_ticks(HORIZON["months"])(s))


if __name__ == "__main__":
    specs()
    svgs()
