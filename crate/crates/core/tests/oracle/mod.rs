//! Random SVG documents with known geometry, plus brute-force reference
//! answers computed from the generator's own model (never from the parser).
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

pub const WIDTH: f64 = 1000.0;
pub const HEIGHT: f64 = 800.0;

const CLASSES: [&str; 5] = ["a", "b", "mark", "axis", "legend"];
pub const WORDS: [&str; 6] = ["alpha", "beta", "Total", "2018", "x y", "gamma"];

#[derive(Debug, Clone)]
pub enum Shape {
    Group { dx: i32, dy: i32, rotate: bool },
    Rect { x: i32, y: i32, w: i32, h: i32 },
    Circle { cx: i32, cy: i32, r: i32 },
    Text { x: i32, y: i32, size: i32, anchor: &'static str, content: String, padded: bool },
}

#[derive(Debug, Clone)]
pub struct Elem {
    pub tag: &'static str,
    pub id: Option<String>,
    pub classes: Vec<&'static str>,
    pub shape: Shape,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
}

/// Elements in document (pre-order) order; index 0 is the root `<svg>`.
#[derive(Debug, Clone)]
pub struct Model {
    pub elems: Vec<Elem>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl BBox {
    pub fn center(&self) -> (f64, f64) {
        ((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0)
    }
}

pub fn random_model(rng: &mut impl Rng, count: usize) -> Model {
    // Build in creation order, then renumber in pre-order.
    struct Raw {
        elem: Elem,
        kids: Vec<usize>,
    }
    let root = Elem {
        tag: "svg",
        id: None,
        classes: vec![],
        shape: Shape::Group { dx: 0, dy: 0, rotate: false },
        children: vec![],
        parent: None,
    };
    let mut raw = vec![Raw { elem: root, kids: vec![] }];
    let mut containers = vec![0usize];
    while raw.len() < count {
        let parent = *containers.choose(rng).unwrap();
        let classes: Vec<&'static str> = CLASSES.iter().copied().filter(|_| rng.gen_bool(0.25)).collect();
        let id = rng.gen_bool(0.2).then(|| format!("e{}", raw.len()));
        let (tag, shape) = match rng.gen_range(0..4) {
            0 => ("g", Shape::Group { dx: rng.gen_range(-50..=50), dy: rng.gen_range(-50..=50), rotate: rng.gen_bool(0.1) }),
            1 => ("rect", Shape::Rect { x: rng.gen_range(0..600), y: rng.gen_range(0..600), w: rng.gen_range(0..80), h: rng.gen_range(0..80) }),
            2 => ("circle", Shape::Circle { cx: rng.gen_range(0..700), cy: rng.gen_range(0..700), r: rng.gen_range(0..30) }),
            _ => (
                "text",
                Shape::Text {
                    x: rng.gen_range(0..700),
                    y: rng.gen_range(20..700),
                    size: *[10, 20].choose(rng).unwrap(),
                    anchor: ["start", "middle", "end"].choose(rng).unwrap(),
                    content: WORDS.choose(rng).unwrap().to_string(),
                    padded: rng.gen_bool(0.2),
                },
            ),
        };
        let idx = raw.len();
        raw.push(Raw { elem: Elem { tag, id, classes, shape, children: vec![], parent: None }, kids: vec![] });
        raw[parent].kids.push(idx);
        if tag == "g" {
            containers.push(idx);
        }
    }
    let mut order = Vec::with_capacity(raw.len());
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        order.push(i);
        stack.extend(raw[i].kids.iter().rev());
    }
    let mut pos = vec![0; raw.len()];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }
    let mut elems: Vec<Elem> = order.iter().map(|&i| raw[i].elem.clone()).collect();
    for &i in &order {
        let p = pos[i];
        elems[p].children = raw[i].kids.iter().map(|k| pos[*k]).collect();
        for k in &raw[i].kids {
            elems[pos[*k]].parent = Some(p);
        }
    }
    Model { elems }
}

impl Model {
    pub fn to_svg(&self) -> String {
        let mut out = String::new();
        self.write(0, &mut out);
        out
    }

    fn write(&self, i: usize, out: &mut String) {
        let e = &self.elems[i];
        out.push('<');
        out.push_str(e.tag);
        if i == 0 {
            out.push_str(&format!(r#" xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}""#));
        }
        if let Some(id) = &e.id {
            out.push_str(&format!(r#" id="{id}""#));
        }
        if !e.classes.is_empty() {
            out.push_str(&format!(r#" class="{}""#, e.classes.join(" ")));
        }
        match &e.shape {
            Shape::Group { dx, dy, rotate } if i != 0 => {
                if *rotate {
                    out.push_str(&format!(r#" transform="translate({dx},{dy}) rotate(15)""#));
                } else if *dy == 0 {
                    out.push_str(&format!(r#" transform="translate({dx})""#));
                } else {
                    out.push_str(&format!(r#" transform="translate({dx} {dy})""#));
                }
            }
            Shape::Group { .. } => {}
            Shape::Rect { x, y, w, h } => out.push_str(&format!(r#" x="{x}" y="{y}" width="{w}" height="{h}""#)),
            Shape::Circle { cx, cy, r } => out.push_str(&format!(r#" cx="{cx}" cy="{cy}" r="{r}""#)),
            Shape::Text { x, y, size, anchor, .. } => {
                out.push_str(&format!(r#" x="{x}" y="{y}" font-size="{size}" text-anchor="{anchor}""#))
            }
        }
        match &e.shape {
            Shape::Text { content, padded, .. } => {
                let pad = if *padded { "  " } else { "" };
                out.push_str(&format!(">{pad}{content}{pad}</{}>", e.tag));
            }
            _ if e.children.is_empty() => out.push_str("/>"),
            _ => {
                out.push('>');
                for c in &e.children {
                    out.push('\n');
                    self.write(*c, out);
                }
                out.push_str(&format!("\n</{}>", e.tag));
            }
        }
    }

    pub fn ancestors(&self, i: usize) -> Vec<usize> {
        let mut out = vec![];
        let mut p = self.elems[i].parent;
        while let Some(a) = p {
            out.push(a);
            p = self.elems[a].parent;
        }
        out
    }

    /// Translation applied to element `i`, summed from the root down.
    pub fn translate(&self, i: usize) -> (f64, f64) {
        let mut chain = self.ancestors(i);
        chain.reverse();
        chain.push(i);
        let (mut x, mut y) = (0.0, 0.0);
        for a in chain {
            if let Shape::Group { dx, dy, .. } = self.elems[a].shape {
                x += f64::from(dx);
                y += f64::from(dy);
            }
        }
        (x, y)
    }

    fn rotates(&self, i: usize) -> bool {
        matches!(self.elems[i].shape, Shape::Group { rotate: true, .. })
    }

    /// Element or any ancestor uses a non-translate transform.
    pub fn transformed(&self, i: usize) -> bool {
        self.rotates(i) || self.ancestors(i).into_iter().any(|a| self.rotates(a))
    }

    pub fn text(&self, i: usize) -> Option<&str> {
        match &self.elems[i].shape {
            Shape::Text { content, .. } => Some(content.as_str()),
            _ => None,
        }
    }

    pub fn bbox(&self, i: usize) -> Option<BBox> {
        let (tx, ty) = self.translate(i);
        match &self.elems[i].shape {
            Shape::Rect { x, y, w, h } => {
                let (x, y) = (f64::from(*x) + tx, f64::from(*y) + ty);
                Some(BBox { x0: x, y0: y, x1: x + f64::from(*w), y1: y + f64::from(*h) })
            }
            Shape::Circle { cx, cy, r } => {
                let (cx, cy, r) = (f64::from(*cx) + tx, f64::from(*cy) + ty, f64::from(*r));
                Some(BBox { x0: cx - r, y0: cy - r, x1: cx + r, y1: cy + r })
            }
            Shape::Text { x, y, size, anchor, content, .. } => {
                let fs = f64::from(*size);
                let w = 0.6 * fs * content.chars().count() as f64;
                let (x, y) = (f64::from(*x) + tx, f64::from(*y) + ty);
                let left = match *anchor {
                    "middle" => x - w / 2.0,
                    "end" => x - w,
                    _ => x,
                };
                Some(BBox { x0: left, y0: y - fs, x1: left + w, y1: y - fs + 1.2 * fs })
            }
            Shape::Group { .. } => {
                let own_rotates = self.transformed(i);
                self.elems[i]
                    .children
                    .iter()
                    .filter(|c| own_rotates || !self.rotates(**c))
                    .filter_map(|c| self.bbox(*c))
                    .reduce(|a, b| BBox { x0: a.x0.min(b.x0), y0: a.y0.min(b.y0), x1: a.x1.max(b.x1), y1: a.y1.max(b.y1) })
            }
        }
    }

    pub fn class_pool(&self) -> &'static [&'static str] {
        &CLASSES
    }
}

/// One compound of a descendant-combinator selector.
#[derive(Debug, Clone)]
pub struct Part {
    pub tag: Option<&'static str>,
    pub id: Option<String>,
    pub classes: Vec<&'static str>,
}

impl Part {
    pub fn render(&self) -> String {
        let mut s = self.tag.unwrap_or_default().to_string();
        if let Some(id) = &self.id {
            s.push('#');
            s.push_str(id);
        }
        for c in &self.classes {
            s.push('.');
            s.push_str(c);
        }
        s
    }

    fn matches(&self, e: &Elem) -> bool {
        self.tag.is_none_or(|t| t == e.tag)
            && self.id.as_ref().is_none_or(|id| e.id.as_ref() == Some(id))
            && self.classes.iter().all(|c| e.classes.contains(c))
    }
}

pub fn random_selector(rng: &mut impl Rng, model: &Model) -> Vec<Part> {
    let n = rng.gen_range(1..=3);
    (0..n)
        .map(|_| loop {
            let tag = rng.gen_bool(0.5).then(|| *["g", "rect", "circle", "text", "svg"].choose(rng).unwrap());
            let id = rng.gen_bool(0.1).then(|| {
                let ids: Vec<&String> = model.elems.iter().filter_map(|e| e.id.as_ref()).collect();
                ids.choose(rng).map_or_else(|| "missing".to_string(), |s| s.to_string())
            });
            let classes: Vec<&'static str> = CLASSES.iter().copied().filter(|_| rng.gen_bool(0.2)).collect();
            let part = Part { tag, id, classes };
            if !part.render().is_empty() {
                break part;
            }
        })
        .collect()
}

pub fn render_selector(parts: &[Part]) -> String {
    parts.iter().map(Part::render).collect::<Vec<_>>().join(" ")
}

/// Exhaustive match: some strictly-ascending chain of ancestors matches the leading parts.
pub fn selector_matches(model: &Model, parts: &[Part], i: usize) -> bool {
    let (last, rest) = parts.split_last().unwrap();
    if !last.matches(&model.elems[i]) {
        return false;
    }
    fn chain(model: &Model, rest: &[Part], below: usize) -> bool {
        let Some((last, before)) = rest.split_last() else {
            return true;
        };
        model.ancestors(below).into_iter().any(|a| last.matches(&model.elems[a]) && chain(model, before, a))
    }
    chain(model, rest, i)
}

pub fn select_all(model: &Model, parts: &[Part]) -> Vec<usize> {
    (0..model.elems.len()).filter(|i| selector_matches(model, parts, *i)).collect()
}

pub fn find_text(model: &Model, value: &str) -> Option<usize> {
    (0..model.elems.len()).find(|i| model.text(*i) == Some(value))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMeasure {
    Cx,
    Cy,
    Height,
    Area,
}

pub fn measure(model: &Model, i: usize, m: OracleMeasure) -> Option<f64> {
    if model.transformed(i) {
        return None;
    }
    let b = model.bbox(i)?;
    Some(match m {
        OracleMeasure::Cx => b.center().0,
        OracleMeasure::Cy => b.center().1,
        OracleMeasure::Height => b.y1 - b.y0,
        OracleMeasure::Area => (b.x1 - b.x0) * (b.y1 - b.y0),
    })
}

/// Index of the extreme element among matches; ties go to the earliest.
pub fn extremum(model: &Model, parts: &[Part], m: OracleMeasure, max: bool) -> Option<usize> {
    let scored: Vec<(usize, f64)> = select_all(model, parts).into_iter().filter_map(|i| Some((i, measure(model, i, m)?))).collect();
    let best = scored.iter().map(|(_, v)| *v).fold(None, |acc: Option<f64>, v| {
        Some(match acc {
            None => v,
            Some(a) if max => a.max(v),
            Some(a) => a.min(v),
        })
    })?;
    scored.iter().find(|(_, v)| *v == best).map(|(i, _)| *i)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expected {
    At(f64, f64),
    NoMatch,
    Transformed,
    Unmeasurable,
}

/// Reference placement for a node picked by any strategy: the bbox center, or
/// top-left plus `offset` for text lookups.
pub fn place(model: &Model, node: Option<usize>, offset: Option<(f64, f64)>) -> Expected {
    let Some(i) = node else {
        return Expected::NoMatch;
    };
    if model.transformed(i) {
        return Expected::Transformed;
    }
    let Some(b) = model.bbox(i) else {
        return Expected::Unmeasurable;
    };
    let (x, y) = match offset {
        Some((l, t)) => (b.x0 + l, b.y0 + t),
        None => b.center(),
    };
    Expected::At(x.clamp(0.0, WIDTH), y.clamp(0.0, HEIGHT))
}
