//! Tree encoding.
//!
//! A tree over `m` Boolean variables is evaluated on all `2^m` assignments in
//! lexicographic order (x0 most significant) and the first `g_n` outputs are
//! used as the RS genotype, where `m` is the smallest integer with
//! `2^m >= g_n`. The remaining outputs are ignored.
//!
//! Depth counts edges: a lone terminal has depth 0.

use std::fmt;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::{parse_error, Error, Result};
use crate::rotsym::{OrbitTable, RsGenotype};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Primitive {
    Var(u8),
    Not,
    Or,
    Xor,
    And,
    And2,
    Xnor,
    If,
}

pub const FUNCTIONS: [Primitive; 7] = [
    Primitive::Or,
    Primitive::Xor,
    Primitive::And,
    Primitive::And2,
    Primitive::Xnor,
    Primitive::If,
    Primitive::Not,
];

impl Primitive {
    pub fn arity(self) -> usize {
        match self {
            Primitive::Var(_) => 0,
            Primitive::Not => 1,
            Primitive::If => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> String {
        match self {
            Primitive::Var(i) => format!("x{i}"),
            Primitive::Not => "NOT".into(),
            Primitive::Or => "OR".into(),
            Primitive::Xor => "XOR".into(),
            Primitive::And => "AND".into(),
            Primitive::And2 => "AND2".into(),
            Primitive::Xnor => "XNOR".into(),
            Primitive::If => "IF".into(),
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "NOT" => Primitive::Not,
            "OR" => Primitive::Or,
            "XOR" => Primitive::Xor,
            "AND" => Primitive::And,
            "AND2" => Primitive::And2,
            "XNOR" => Primitive::Xnor,
            "IF" => Primitive::If,
            _ => {
                let idx = s.strip_prefix('x')?.parse::<u8>().ok()?;
                Primitive::Var(idx)
            }
        })
    }

    /// Applies the primitive to already evaluated arguments.
    pub fn apply(self, args: &[bool], vars: &[bool]) -> bool {
        match self {
            Primitive::Var(i) => vars[i as usize],
            Primitive::Not => !args[0],
            Primitive::Or => args[0] | args[1],
            Primitive::Xor => args[0] ^ args[1],
            Primitive::And => args[0] & args[1],
            Primitive::And2 => args[0] & !args[1],
            Primitive::Xnor => !(args[0] ^ args[1]),
            Primitive::If => {
                if args[0] {
                    args[1]
                } else {
                    args[2]
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    pub prim: Primitive,
    pub children: Vec<Node>,
}

impl Node {
    pub fn leaf(var: u8) -> Self {
        Self {
            prim: Primitive::Var(var),
            children: Vec::new(),
        }
    }

    pub fn apply(prim: Primitive, children: Vec<Node>) -> Self {
        debug_assert_eq!(prim.arity(), children.len());
        Self { prim, children }
    }

    pub fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Node::size).sum::<usize>()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    fn well_formed(&self, vars: usize) -> bool {
        let ok = match self.prim {
            Primitive::Var(i) => (i as usize) < vars,
            p => p.arity() == self.children.len(),
        };
        ok && self.children.iter().all(|c| c.well_formed(vars))
    }

    fn eval(&self, vars: &[bool]) -> bool {
        let mut args = [false; 3];
        for (a, c) in args.iter_mut().zip(&self.children) {
            *a = c.eval(vars);
        }
        self.prim.apply(&args[..self.children.len()], vars)
    }

    fn eval_words(&self, columns: &[Vec<u64>]) -> Vec<u64> {
        if let Primitive::Var(i) = self.prim {
            return columns[i as usize].clone();
        }
        let mut args = self.children.iter().map(|c| c.eval_words(columns));
        let mut out = args.next().expect("functions have arguments");
        match self.prim {
            Primitive::Not => out.iter_mut().for_each(|w| *w = !*w),
            Primitive::Or => zip_in(&mut out, &args.next().unwrap(), |a, b| a | b),
            Primitive::Xor => zip_in(&mut out, &args.next().unwrap(), |a, b| a ^ b),
            Primitive::And => zip_in(&mut out, &args.next().unwrap(), |a, b| a & b),
            Primitive::And2 => zip_in(&mut out, &args.next().unwrap(), |a, b| a & !b),
            Primitive::Xnor => zip_in(&mut out, &args.next().unwrap(), |a, b| !(a ^ b)),
            Primitive::If => {
                let (then, otherwise) = (args.next().unwrap(), args.next().unwrap());
                for ((c, t), e) in out.iter_mut().zip(&then).zip(&otherwise) {
                    *c = (*c & t) | (!*c & e);
                }
            }
            Primitive::Var(_) => unreachable!(),
        }
        out
    }

    /// Preorder list of node paths (child indices from the root).
    fn paths(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut stack = vec![(self, Vec::new())];
        while let Some((node, path)) = stack.pop() {
            for (i, c) in node.children.iter().enumerate().rev() {
                let mut p = path.clone();
                p.push(i as u8);
                stack.push((c, p));
            }
            out.push(path);
        }
        out
    }

    fn at(&self, path: &[u8]) -> Option<&Node> {
        let mut node = self;
        for &i in path {
            node = node.children.get(i as usize)?;
        }
        Some(node)
    }

    fn at_mut(&mut self, path: &[u8]) -> &mut Node {
        let mut node = self;
        for &i in path {
            node = &mut node.children[i as usize];
        }
        node
    }

    fn write_sexpr(&self, out: &mut String) {
        if self.children.is_empty() {
            out.push_str(&self.prim.name());
            return;
        }
        out.push('(');
        out.push_str(&self.prim.name());
        for c in &self.children {
            out.push(' ');
            c.write_sexpr(out);
        }
        out.push(')');
    }
}

fn zip_in(out: &mut [u64], other: &[u64], f: impl Fn(u64, u64) -> u64) {
    for (a, &b) in out.iter_mut().zip(other) {
        *a = f(*a, b);
    }
}

/// Size and initialisation controls for tree genotypes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GpParams {
    /// Number of terminal variables `m`.
    pub vars: usize,
    pub max_depth: usize,
    pub init_min_depth: usize,
    pub init_max_depth: usize,
    /// Probability that crossover point selection picks an interior node.
    pub internal_bias: f64,
    pub repair_attempts: usize,
}

impl GpParams {
    pub fn new(vars: usize, max_depth: usize) -> Self {
        Self {
            vars,
            max_depth,
            init_min_depth: 2,
            init_max_depth: 6.min(max_depth),
            internal_bias: 0.9,
            repair_attempts: 10,
        }
    }

    /// Parameters for an RS genotype of `genotype_len` bits.
    pub fn for_genotype(genotype_len: usize, max_depth: usize) -> Self {
        Self::new(variables_for(genotype_len), max_depth)
    }
}

/// Smallest `m` with `2^m >= len` (at least 1).
pub fn variables_for(len: usize) -> usize {
    (len.max(2) - 1).ilog2() as usize + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GpTree {
    root: Node,
    vars: usize,
}

impl GpTree {
    pub fn new(root: Node, vars: usize) -> Result<Self> {
        if !root.well_formed(vars) {
            return Err(Error::Config(format!(
                "tree uses undefined variables or wrong arities for m = {vars}"
            )));
        }
        Ok(Self { root, vars })
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    pub fn size(&self) -> usize {
        self.root.size()
    }

    pub fn is_well_formed(&self) -> bool {
        self.root.well_formed(self.vars)
    }

    /// Evaluates the tree on one assignment of `m` variables.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        assert_eq!(
            assignment.len(),
            self.vars,
            "assignment length must equal m"
        );
        self.root.eval(assignment)
    }

    /// Outputs on all `2^m` assignments, row `r` at bit `r % 64` of word `r / 64`.
    pub fn truth_words(&self) -> Vec<u64> {
        let columns = variable_columns(self.vars);
        let mut out = self.root.eval_words(&columns);
        let rows = 1usize << self.vars;
        if rows < 64 {
            out[0] &= (1u64 << rows) - 1;
        }
        out
    }

    /// First `len` outputs in lexicographic row order.
    pub fn output_prefix(&self, len: usize) -> Vec<bool> {
        let words = self.truth_words();
        (0..len)
            .map(|r| (words[r / 64] >> (r % 64)) & 1 == 1)
            .collect()
    }

    pub fn to_sexpr(&self) -> String {
        let mut s = String::new();
        self.root.write_sexpr(&mut s);
        s
    }

    /// Parses a prefix s-expression such as `(IF x0 (AND2 x1 x2) (NOT x3))`.
    pub fn parse(text: &str, vars: usize) -> Result<Self> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let root = parse_node(&tokens, &mut pos)?;
        if let Some(&(col, _)) = tokens.get(pos) {
            return Err(parse_error(1, col, "unexpected trailing tokens"));
        }
        if !root.well_formed(vars) {
            return Err(parse_error(
                1,
                1,
                format!("variable index out of range for m = {vars}"),
            ));
        }
        Ok(Self { root, vars })
    }
}

impl fmt::Display for GpTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

fn tokenize(text: &str) -> Vec<(usize, String)> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    for (i, c) in text.chars().enumerate() {
        let col = i + 1;
        if c == '(' || c == ')' || c.is_whitespace() {
            if !current.is_empty() {
                tokens.push((start, std::mem::take(&mut current)));
            }
            if !c.is_whitespace() {
                tokens.push((col, c.to_string()));
            }
        } else {
            if current.is_empty() {
                start = col;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        tokens.push((start, current));
    }
    tokens
}

fn parse_node(tokens: &[(usize, String)], pos: &mut usize) -> Result<Node> {
    let (col, tok) = tokens.get(*pos).ok_or_else(|| {
        parse_error(
            1,
            tokens.last().map_or(1, |t| t.0),
            "unexpected end of input",
        )
    })?;
    *pos += 1;
    if tok == "(" {
        let (hcol, head) = tokens
            .get(*pos)
            .ok_or_else(|| parse_error(1, *col, "missing operator"))?;
        *pos += 1;
        let prim = Primitive::from_name(head)
            .filter(|p| p.arity() > 0)
            .ok_or_else(|| parse_error(1, *hcol, format!("unknown function {head:?}")))?;
        let mut children = Vec::with_capacity(prim.arity());
        while tokens.get(*pos).map(|t| t.1.as_str()) != Some(")") {
            if *pos >= tokens.len() {
                return Err(parse_error(1, *col, "unclosed parenthesis"));
            }
            children.push(parse_node(tokens, pos)?);
        }
        *pos += 1;
        if children.len() != prim.arity() {
            return Err(parse_error(
                1,
                *hcol,
                format!(
                    "{head} takes {} arguments, got {}",
                    prim.arity(),
                    children.len()
                ),
            ));
        }
        Ok(Node { prim, children })
    } else {
        match Primitive::from_name(tok) {
            Some(p @ Primitive::Var(_)) => Ok(Node {
                prim: p,
                children: Vec::new(),
            }),
            _ => Err(parse_error(1, *col, format!("unexpected token {tok:?}"))),
        }
    }
}

fn variable_columns(vars: usize) -> Vec<Vec<u64>> {
    let rows = 1usize << vars;
    let words = rows.div_ceil(64);
    (0..vars)
        .map(|k| {
            let shift = vars - 1 - k;
            (0..words)
                .map(|w| {
                    (0..64)
                        .filter(|b| {
                            let r = w * 64 + b;
                            r < rows && (r >> shift) & 1 == 1
                        })
                        .fold(0u64, |acc, b| acc | (1 << b))
                })
                .collect()
        })
        .collect()
}

/// Evaluates the tree and keeps the first `g_n` outputs as the RS genotype.
pub fn gp_decode(t: &GpTree, ot: &OrbitTable) -> Result<RsGenotype> {
    let len = ot.orbit_count();
    let m = variables_for(len);
    if t.vars != m {
        return Err(Error::Config(format!(
            "tree has {} variables, genotype of {len} bits needs {m}",
            t.vars
        )));
    }
    RsGenotype::new(ot.variables(), t.output_prefix(len))
}

fn random_terminal<R: Rng + ?Sized>(vars: usize, rng: &mut R) -> Node {
    Node::leaf(rng.random_range(0..vars) as u8)
}

fn random_function<R: Rng + ?Sized>(rng: &mut R) -> Primitive {
    *FUNCTIONS.choose(rng).expect("non-empty function set")
}

/// Full method: every branch has exactly `depth` levels below the root.
pub fn full<R: Rng + ?Sized>(vars: usize, depth: usize, rng: &mut R) -> Node {
    if depth == 0 {
        return random_terminal(vars, rng);
    }
    let prim = random_function(rng);
    let children = (0..prim.arity())
        .map(|_| full(vars, depth - 1, rng))
        .collect();
    Node { prim, children }
}

/// Grow method: primitives drawn from the whole set until `depth` forces terminals.
pub fn grow<R: Rng + ?Sized>(vars: usize, depth: usize, rng: &mut R) -> Node {
    let total = vars + FUNCTIONS.len();
    if depth == 0 || rng.random_range(0..total) < vars {
        return random_terminal(vars, rng);
    }
    let prim = random_function(rng);
    let children = (0..prim.arity())
        .map(|_| grow(vars, depth - 1, rng))
        .collect();
    Node { prim, children }
}

/// Ramped half-and-half: depths cycle through the initialisation range and
/// alternate between the full and grow methods.
pub fn ramped_half_and_half<R: Rng + ?Sized>(
    params: &GpParams,
    count: usize,
    rng: &mut R,
) -> Vec<GpTree> {
    let lo = params.init_min_depth.min(params.init_max_depth);
    let span = params.init_max_depth - lo + 1;
    (0..count)
        .map(|i| {
            let depth = lo + (i / 2) % span;
            let root = if i % 2 == 0 {
                full(params.vars, depth, rng)
            } else {
                grow(params.vars, depth, rng)
            };
            GpTree {
                root,
                vars: params.vars,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeCrossover {
    Subtree,
    Uniform,
    SizeFair,
    OnePoint,
    ContextPreserving,
}

pub const CROSSOVERS: [TreeCrossover; 5] = [
    TreeCrossover::Subtree,
    TreeCrossover::Uniform,
    TreeCrossover::SizeFair,
    TreeCrossover::OnePoint,
    TreeCrossover::ContextPreserving,
];

/// Picks a node path, interior nodes with probability `internal_bias`.
fn select_point<R: Rng + ?Sized>(root: &Node, bias: f64, rng: &mut R) -> Vec<u8> {
    let paths = root.paths();
    let (inner, leaves): (Vec<_>, Vec<_>) = paths
        .into_iter()
        .partition(|p| !root.at(p).expect("own path").is_leaf());
    let pool = if !inner.is_empty() && rng.random_bool(bias) {
        inner
    } else {
        leaves
    };
    pool.choose(rng)
        .expect("tree has at least one node")
        .clone()
}

fn replace_at(root: &Node, path: &[u8], sub: Node) -> Node {
    let mut out = root.clone();
    *out.at_mut(path) = sub;
    out
}

fn uniform_merge<R: Rng + ?Sized>(a: &Node, b: &Node, rng: &mut R) -> Node {
    let interior = !a.is_leaf() && a.children.len() == b.children.len();
    if interior {
        let prim = if rng.random::<bool>() { a.prim } else { b.prim };
        let children = a
            .children
            .iter()
            .zip(&b.children)
            .map(|(x, y)| uniform_merge(x, y, rng))
            .collect();
        Node { prim, children }
    } else if rng.random::<bool>() {
        a.clone()
    } else {
        b.clone()
    }
}

/// Paths in the common region: every ancestor has equal arity in both trees.
fn common_region(a: &Node, b: &Node) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut stack = vec![(a, b, Vec::new())];
    while let Some((x, y, path)) = stack.pop() {
        if x.children.len() == y.children.len() {
            for (i, (cx, cy)) in x.children.iter().zip(&y.children).enumerate() {
                let mut p = path.clone();
                p.push(i as u8);
                stack.push((cx, cy, p));
            }
        }
        out.push(path);
    }
    out
}

fn crossover_once<R: Rng + ?Sized>(
    p1: &Node,
    p2: &Node,
    op: TreeCrossover,
    bias: f64,
    rng: &mut R,
) -> Node {
    match op {
        TreeCrossover::Subtree => {
            let at1 = select_point(p1, bias, rng);
            let at2 = select_point(p2, bias, rng);
            replace_at(p1, &at1, p2.at(&at2).expect("own path").clone())
        }
        TreeCrossover::Uniform => uniform_merge(p1, p2, rng),
        TreeCrossover::SizeFair => {
            let at1 = select_point(p1, bias, rng);
            let limit = 1 + 2 * p1.at(&at1).expect("own path").size();
            let candidates: Vec<_> = p2
                .paths()
                .into_iter()
                .filter(|p| p2.at(p).expect("own path").size() <= limit)
                .collect();
            let at2 = candidates.choose(rng).expect("leaves always qualify");
            replace_at(p1, &at1, p2.at(at2).expect("own path").clone())
        }
        TreeCrossover::OnePoint => {
            let region = common_region(p1, p2);
            let at = region.choose(rng).expect("root is common");
            replace_at(p1, at, p2.at(at).expect("common path").clone())
        }
        TreeCrossover::ContextPreserving => {
            let shared: Vec<_> = p1
                .paths()
                .into_iter()
                .filter(|p| p2.at(p).is_some())
                .collect();
            let at = shared.choose(rng).expect("root is shared");
            replace_at(p1, at, p2.at(at).expect("shared path").clone())
        }
    }
}

/// Applies `op`, retrying until the child respects `max_depth`; falls back
/// to a copy of `p1`.
pub fn gp_crossover_with<R: Rng + ?Sized>(
    p1: &GpTree,
    p2: &GpTree,
    op: TreeCrossover,
    params: &GpParams,
    rng: &mut R,
) -> GpTree {
    for _ in 0..params.repair_attempts.max(1) {
        let root = crossover_once(&p1.root, &p2.root, op, params.internal_bias, rng);
        if root.depth() <= params.max_depth {
            return GpTree {
                root,
                vars: p1.vars,
            };
        }
    }
    p1.clone()
}

/// Crossover with the operator drawn uniformly from [`CROSSOVERS`].
pub fn gp_crossover<R: Rng + ?Sized>(
    p1: &GpTree,
    p2: &GpTree,
    params: &GpParams,
    rng: &mut R,
) -> GpTree {
    let op = *CROSSOVERS.choose(rng).expect("non-empty");
    gp_crossover_with(p1, p2, op, params, rng)
}

/// Subtree mutation: a uniformly chosen node is replaced by a grown subtree
/// that fits the remaining depth budget.
pub fn gp_mutate<R: Rng + ?Sized>(t: &GpTree, params: &GpParams, rng: &mut R) -> GpTree {
    let paths = t.root.paths();
    let at = paths.choose(rng).expect("non-empty tree");
    let budget = params
        .max_depth
        .saturating_sub(at.len())
        .min(params.init_max_depth);
    let sub = grow(params.vars, budget, rng);
    GpTree {
        root: replace_at(&t.root, at, sub),
        vars: t.vars,
    }
}
