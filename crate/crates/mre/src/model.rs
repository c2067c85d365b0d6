//! Annotated discrete Bayesian networks: variables, CPTs, validation, JSON I/O
//! and d-separation.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// Index of a variable in declaration order.
pub type VarId = usize;

const ROW_SUM_TOLERANCE: f64 = 1e-9;

/// Role annotation of a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Target,
    Observation,
    Auxiliary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub states: Vec<String>,
    pub role: Role,
}

/// Noisy-OR parameter for one parent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoisyOrLink {
    pub parent: String,
    pub activating_state: String,
    pub p: f64,
}

/// Exception row of a deterministic CPT, keyed by a full parent configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeterministicRow {
    pub config: Vec<String>,
    pub state: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CptKind {
    /// Row-major probabilities: parents in declared order with the rightmost
    /// parent varying fastest, child states innermost.
    Table { rows: Vec<f64> },
    NoisyOr {
        effect_state: String,
        links: Vec<NoisyOrLink>,
        leak: f64,
    },
    Deterministic {
        default_state: String,
        #[serde(default)]
        exceptions: Vec<DeterministicRow>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cpt {
    pub child: String,
    #[serde(default)]
    pub parents: Vec<String>,
    #[serde(flatten)]
    pub kind: CptKind,
}

/// Serialized form of a network.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub variables: Vec<Variable>,
    pub cpts: Vec<Cpt>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("network has no variables")]
    Empty,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` needs at least two states")]
    TooFewStates(String),
    #[error("variable `{var}`: duplicate state `{state}`")]
    DuplicateState { var: String, state: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{var}` has no state `{state}`")]
    UnknownState { var: String, state: String },
    #[error("variable `{0}` has no CPT")]
    MissingCpt(String),
    #[error("variable `{0}` has more than one CPT")]
    DuplicateCpt(String),
    #[error("CPT of `{child}`: parent `{parent}` listed twice")]
    DuplicateParent { child: String, parent: String },
    #[error("CPT of `{child}`: expected {expected} entries, found {found}")]
    RowCount {
        child: String,
        expected: usize,
        found: usize,
    },
    #[error("CPT of `{child}` row {row}: row sum {sum} ≠ 1")]
    RowSum { child: String, row: usize, sum: f64 },
    #[error("CPT of `{child}`: probability {value} outside [0,1]")]
    Probability { child: String, value: f64 },
    #[error("CPT of `{child}`: noisy-OR child must be binary")]
    NoisyOrArity { child: String },
    #[error("CPT of `{child}`: noisy-OR links must name each parent exactly once")]
    NoisyOrLinks { child: String },
    #[error("CPT of `{child}`: exception row {row} has {found} states for {expected} parents")]
    ExceptionArity {
        child: String,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("CPT of `{child}`: parent configuration of exception row {row} covered twice")]
    DuplicateException { child: String, row: usize },
    #[error("cycle through {0:?}")]
    Cycle(Vec<String>),
    #[error("malformed binding `{0}`, expected VAR=state")]
    Binding(String),
    #[error("variable `{0}` bound twice")]
    DoubleBinding(String),
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
}

/// A list of validation failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub struct ModelErrors(pub Vec<ModelError>);

impl fmt::Display for ModelErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Partial map from variables to state indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(BTreeMap<VarId, usize>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, usize)>) -> Self {
        Self(pairs.into_iter().collect())
    }

    pub fn with(mut self, var: VarId, state: usize) -> Self {
        self.0.insert(var, state);
        self
    }

    pub fn set(&mut self, var: VarId, state: usize) {
        self.0.insert(var, state);
    }

    pub fn get(&self, var: VarId) -> Option<usize> {
        self.0.get(&var).copied()
    }

    pub fn contains(&self, var: VarId) -> bool {
        self.0.contains_key(&var)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, usize)> + '_ {
        self.0.iter().map(|(&v, &s)| (v, s))
    }

    pub fn vars(&self) -> Vec<VarId> {
        self.0.keys().copied().collect()
    }

    pub fn without(&self, var: VarId) -> Self {
        let mut out = self.clone();
        out.0.remove(&var);
        out
    }

    /// True when every binding of `self` also appears in `other`.
    pub fn is_subset_of(&self, other: &Assignment) -> bool {
        self.iter().all(|(v, s)| other.get(v) == Some(s))
    }

    /// True when `self` is a subset of `other` and strictly smaller.
    pub fn is_strict_subset_of(&self, other: &Assignment) -> bool {
        self.len() < other.len() && self.is_subset_of(other)
    }

    pub fn is_consistent_with(&self, other: &Assignment) -> bool {
        self.iter()
            .all(|(v, s)| other.get(v).is_none_or(|t| t == s))
    }

    pub fn shares_variable(&self, other: &Assignment) -> bool {
        self.0.keys().any(|v| other.contains(*v))
    }

    /// Union of two consistent assignments, `None` on a conflicting binding.
    pub fn union(&self, other: &Assignment) -> Option<Assignment> {
        if !self.is_consistent_with(other) {
            return None;
        }
        let mut out = self.clone();
        out.0.extend(other.iter());
        Some(out)
    }
}

impl FromIterator<(VarId, usize)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (VarId, usize)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}

/// A validated network with all CPTs expanded to tables.
#[derive(Clone, Debug)]
pub struct Network {
    file: NetworkFile,
    index: HashMap<String, VarId>,
    parents: Vec<Vec<VarId>>,
    children: Vec<Vec<VarId>>,
    tables: Vec<Vec<f64>>,
    topo: Vec<VarId>,
}

impl PartialEq for Network {
    fn eq(&self, other: &Self) -> bool {
        self.file == other.file
    }
}

impl Network {
    /// Validates `file` and compiles it.
    pub fn new(file: NetworkFile) -> Result<Self, ModelErrors> {
        let errors = validate(&file);
        if !errors.is_empty() {
            return Err(ModelErrors(errors));
        }
        let index: HashMap<String, VarId> = file
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.clone(), i))
            .collect();
        let n = file.variables.len();
        let mut parents = vec![Vec::new(); n];
        let mut tables = vec![Vec::new(); n];
        for cpt in &file.cpts {
            let child = index[&cpt.child];
            parents[child] = cpt.parents.iter().map(|p| index[p]).collect();
            match expand_cpt(cpt, &file.variables)
                .map_err(|e| ModelErrors(vec![e]))?
                .kind
            {
                CptKind::Table { rows } => tables[child] = rows,
                _ => unreachable!("expand_cpt returns tables"),
            }
        }
        let mut children = vec![Vec::new(); n];
        for (c, ps) in parents.iter().enumerate() {
            for &p in ps {
                children[p].push(c);
            }
        }
        let topo = topological_order(&parents).expect("validated networks are acyclic");
        Ok(Self {
            file,
            index,
            parents,
            children,
            tables,
            topo,
        })
    }

    pub fn file(&self) -> &NetworkFile {
        &self.file
    }

    pub fn len(&self) -> usize {
        self.file.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.file.variables.is_empty()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.file.variables
    }

    pub fn variable(&self, id: VarId) -> &Variable {
        &self.file.variables[id]
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.file.variables[id].name
    }

    pub fn state_name(&self, id: VarId, state: usize) -> &str {
        &self.file.variables[id].states[state]
    }

    pub fn card(&self, id: VarId) -> usize {
        self.file.variables[id].states.len()
    }

    pub fn role(&self, id: VarId) -> Role {
        self.file.variables[id].role
    }

    pub fn id(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    pub fn var_id(&self, name: &str) -> Result<VarId, ModelError> {
        self.id(name)
            .ok_or_else(|| ModelError::UnknownVariable(name.to_string()))
    }

    pub fn state_index(&self, id: VarId, state: &str) -> Result<usize, ModelError> {
        let var = self.variable(id);
        var.states
            .iter()
            .position(|s| s == state)
            .ok_or_else(|| ModelError::UnknownState {
                var: var.name.clone(),
                state: state.to_string(),
            })
    }

    pub fn parents(&self, id: VarId) -> &[VarId] {
        &self.parents[id]
    }

    pub fn children(&self, id: VarId) -> &[VarId] {
        &self.children[id]
    }

    /// Expanded CPT of `id`, row-major over parents then child state.
    pub fn table(&self, id: VarId) -> &[f64] {
        &self.tables[id]
    }

    /// Variables ordered parents-first.
    pub fn topological_order(&self) -> &[VarId] {
        &self.topo
    }

    /// Target variables in declaration order.
    pub fn targets(&self) -> Vec<VarId> {
        (0..self.len())
            .filter(|&v| self.role(v) == Role::Target)
            .collect()
    }

    /// Variables with the given role in declaration order.
    pub fn with_role(&self, role: Role) -> Vec<VarId> {
        (0..self.len()).filter(|&v| self.role(v) == role).collect()
    }

    /// Probability of `state` of `id` under the full parent configuration
    /// read from `config`.
    pub fn cpt_entry(&self, id: VarId, config: &[usize], state: usize) -> f64 {
        let mut row = 0;
        for (&p, &s) in self.parents[id].iter().zip(config) {
            row = row * self.card(p) + s;
        }
        self.tables[id][row * self.card(id) + state]
    }

    /// Builds an assignment from `(variable, state)` name pairs.
    pub fn assignment<S: AsRef<str>>(&self, pairs: &[(S, S)]) -> Result<Assignment, ModelError> {
        let mut out = Assignment::new();
        for (var, state) in pairs {
            let id = self.var_id(var.as_ref())?;
            if out.contains(id) {
                return Err(ModelError::DoubleBinding(var.as_ref().to_string()));
            }
            out.set(id, self.state_index(id, state.as_ref())?);
        }
        Ok(out)
    }

    /// Parses `VAR=state` bindings.
    pub fn parse_bindings<S: AsRef<str>>(&self, bindings: &[S]) -> Result<Assignment, ModelError> {
        let pairs = bindings
            .iter()
            .map(|b| {
                b.as_ref()
                    .split_once('=')
                    .map(|(v, s)| (v.trim(), s.trim()))
                    .filter(|(v, s)| !v.is_empty() && !s.is_empty())
                    .ok_or_else(|| ModelError::Binding(b.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.assignment(&pairs)
    }

    /// Renders an assignment as `(A=s, B=t)` in declaration order.
    pub fn format_assignment(&self, a: &Assignment) -> String {
        let parts: Vec<String> = a
            .iter()
            .map(|(v, s)| format!("{}={}", self.name(v), self.state_name(v, s)))
            .collect();
        format!("({})", parts.join(", "))
    }

    /// Names of the bound variables and states, in declaration order.
    pub fn named_bindings(&self, a: &Assignment) -> Vec<(String, String)> {
        a.iter()
            .map(|(v, s)| (self.name(v).to_string(), self.state_name(v, s).to_string()))
            .collect()
    }

    /// Maps every state of `id` to the smallest state interchangeable with it.
    ///
    /// Two states are interchangeable when the variable's own CPT gives them
    /// equal probability under every parent configuration and every child's
    /// CPT rows are identical for the two states.
    #[allow(clippy::needless_range_loop)]
    pub fn state_classes(&self, id: VarId) -> Vec<usize> {
        let card = self.card(id);
        let mut class: Vec<usize> = (0..card).collect();
        for s in 0..card {
            if class[s] != s {
                continue;
            }
            for t in (s + 1)..card {
                if class[t] == t && self.interchangeable(id, s, t) {
                    class[t] = s;
                }
            }
        }
        class
    }

    fn interchangeable(&self, id: VarId, s: usize, t: usize) -> bool {
        let card = self.card(id);
        let own = &self.tables[id];
        if own.chunks(card).any(|row| row[s] != row[t]) {
            return false;
        }
        self.children[id].iter().all(|&c| {
            let ps = &self.parents[c];
            let pos = ps
                .iter()
                .position(|&p| p == id)
                .expect("child lists parent");
            let cards: Vec<usize> = ps.iter().map(|&p| self.card(p)).collect();
            let rows = cards.iter().product::<usize>();
            let cc = self.card(c);
            (0..rows).all(|r| {
                let mut cfg = decode_index(r, &cards);
                if cfg[pos] != s {
                    return true;
                }
                cfg[pos] = t;
                let r2 = encode_index(&cfg, &cards);
                self.tables[c][r * cc..(r + 1) * cc] == self.tables[c][r2 * cc..(r2 + 1) * cc]
            })
        })
    }
}

/// Row-major index of `config` over `cards`, rightmost fastest.
pub fn encode_index(config: &[usize], cards: &[usize]) -> usize {
    config
        .iter()
        .zip(cards)
        .fold(0, |acc, (&s, &c)| acc * c + s)
}

/// Inverse of [`encode_index`].
pub fn decode_index(mut index: usize, cards: &[usize]) -> Vec<usize> {
    let mut out = vec![0; cards.len()];
    for i in (0..cards.len()).rev() {
        out[i] = index % cards[i];
        index /= cards[i];
    }
    out
}

fn topological_order(parents: &[Vec<VarId>]) -> Result<Vec<VarId>, Vec<VarId>> {
    let n = parents.len();
    let mut indegree: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut children = vec![Vec::new(); n];
    for (c, ps) in parents.iter().enumerate() {
        for &p in ps {
            children[p].push(c);
        }
    }
    let mut queue: VecDeque<VarId> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &c in &children[v] {
            indegree[c] -= 1;
            if indegree[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).filter(|&v| indegree[v] > 0).collect())
    }
}

/// Returns every invariant violation of `file`; empty means valid.
pub fn validate(file: &NetworkFile) -> Vec<ModelError> {
    let mut errors = Vec::new();
    if file.variables.is_empty() {
        errors.push(ModelError::Empty);
        return errors;
    }
    let mut index: HashMap<&str, VarId> = HashMap::new();
    for (i, var) in file.variables.iter().enumerate() {
        if index.insert(var.name.as_str(), i).is_some() {
            errors.push(ModelError::DuplicateVariable(var.name.clone()));
        }
        if var.states.len() < 2 {
            errors.push(ModelError::TooFewStates(var.name.clone()));
        }
        let mut seen = HashSet::new();
        for s in &var.states {
            if !seen.insert(s) {
                errors.push(ModelError::DuplicateState {
                    var: var.name.clone(),
                    state: s.clone(),
                });
            }
        }
    }

    let n = file.variables.len();
    let mut has_cpt = vec![false; n];
    let mut parents = vec![Vec::new(); n];
    for cpt in &file.cpts {
        let Some(&child) = index.get(cpt.child.as_str()) else {
            errors.push(ModelError::UnknownVariable(cpt.child.clone()));
            continue;
        };
        if std::mem::replace(&mut has_cpt[child], true) {
            errors.push(ModelError::DuplicateCpt(cpt.child.clone()));
            continue;
        }
        let mut ok = true;
        let mut seen = HashSet::new();
        for p in &cpt.parents {
            match index.get(p.as_str()) {
                Some(&pid) => parents[child].push(pid),
                None => {
                    errors.push(ModelError::UnknownVariable(p.clone()));
                    ok = false;
                }
            }
            if !seen.insert(p) {
                errors.push(ModelError::DuplicateParent {
                    child: cpt.child.clone(),
                    parent: p.clone(),
                });
                ok = false;
            }
        }
        if ok {
            if let Err(e) = expand_cpt(cpt, &file.variables) {
                errors.push(e);
            }
        }
    }
    for (i, var) in file.variables.iter().enumerate() {
        if !has_cpt[i] {
            errors.push(ModelError::MissingCpt(var.name.clone()));
        }
    }
    if let Err(stuck) = topological_order(&parents) {
        errors.push(ModelError::Cycle(
            stuck
                .into_iter()
                .map(|v| file.variables[v].name.clone())
                .collect(),
        ));
    }
    errors
}

fn lookup<'a>(variables: &'a [Variable], name: &str) -> Result<&'a Variable, ModelError> {
    variables
        .iter()
        .find(|v| v.name == name)
        .ok_or_else(|| ModelError::UnknownVariable(name.to_string()))
}

fn state_of(var: &Variable, state: &str) -> Result<usize, ModelError> {
    var.states
        .iter()
        .position(|s| s == state)
        .ok_or_else(|| ModelError::UnknownState {
            var: var.name.clone(),
            state: state.to_string(),
        })
}

fn check_probability(child: &str, value: f64) -> Result<(), ModelError> {
    if value.is_finite() && (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(ModelError::Probability {
            child: child.to_string(),
            value,
        })
    }
}

/// Expands any CPT to a checked table-kind CPT.
pub fn expand_cpt(cpt: &Cpt, variables: &[Variable]) -> Result<Cpt, ModelError> {
    let child = lookup(variables, &cpt.child)?;
    let parent_vars = cpt
        .parents
        .iter()
        .map(|p| lookup(variables, p))
        .collect::<Result<Vec<_>, _>>()?;
    let cards: Vec<usize> = parent_vars.iter().map(|v| v.states.len()).collect();
    let n_rows: usize = cards.iter().product();
    let cc = child.states.len();

    let rows = match &cpt.kind {
        CptKind::Table { rows } => {
            if rows.len() != n_rows * cc {
                return Err(ModelError::RowCount {
                    child: cpt.child.clone(),
                    expected: n_rows * cc,
                    found: rows.len(),
                });
            }
            rows.clone()
        }
        CptKind::NoisyOr {
            effect_state,
            links,
            leak,
        } => {
            if cc != 2 {
                return Err(ModelError::NoisyOrArity {
                    child: cpt.child.clone(),
                });
            }
            let effect = state_of(child, effect_state)?;
            check_probability(&cpt.child, *leak)?;
            let mut per_parent: Vec<Option<(usize, f64)>> = vec![None; cpt.parents.len()];
            for link in links {
                let pos = cpt.parents.iter().position(|p| *p == link.parent);
                let Some(pos) = pos else {
                    return Err(ModelError::NoisyOrLinks {
                        child: cpt.child.clone(),
                    });
                };
                if per_parent[pos].is_some() {
                    return Err(ModelError::NoisyOrLinks {
                        child: cpt.child.clone(),
                    });
                }
                check_probability(&cpt.child, link.p)?;
                per_parent[pos] =
                    Some((state_of(parent_vars[pos], &link.activating_state)?, link.p));
            }
            if per_parent.iter().any(Option::is_none) {
                return Err(ModelError::NoisyOrLinks {
                    child: cpt.child.clone(),
                });
            }
            let mut rows = Vec::with_capacity(n_rows * 2);
            for r in 0..n_rows {
                let cfg = decode_index(r, &cards);
                let mut inhibit = 1.0 - leak;
                for (i, link) in per_parent.iter().enumerate() {
                    let (active, p) = link.expect("checked above");
                    if cfg[i] == active {
                        inhibit *= 1.0 - p;
                    }
                }
                let mut row = [0.0; 2];
                row[effect] = 1.0 - inhibit;
                row[1 - effect] = inhibit;
                rows.extend_from_slice(&row);
            }
            rows
        }
        CptKind::Deterministic {
            default_state,
            exceptions,
        } => {
            let default = state_of(child, default_state)?;
            let mut chosen = vec![default; n_rows];
            let mut covered = vec![false; n_rows];
            for (i, row) in exceptions.iter().enumerate() {
                if row.config.len() != parent_vars.len() {
                    return Err(ModelError::ExceptionArity {
                        child: cpt.child.clone(),
                        row: i,
                        expected: parent_vars.len(),
                        found: row.config.len(),
                    });
                }
                let cfg = row
                    .config
                    .iter()
                    .zip(&parent_vars)
                    .map(|(s, v)| state_of(v, s))
                    .collect::<Result<Vec<_>, _>>()?;
                let r = encode_index(&cfg, &cards);
                if std::mem::replace(&mut covered[r], true) {
                    return Err(ModelError::DuplicateException {
                        child: cpt.child.clone(),
                        row: i,
                    });
                }
                chosen[r] = state_of(child, &row.state)?;
            }
            let mut rows = vec![0.0; n_rows * cc];
            for (r, &s) in chosen.iter().enumerate() {
                rows[r * cc + s] = 1.0;
            }
            rows
        }
    };

    for &p in &rows {
        check_probability(&cpt.child, p)?;
    }
    for (r, row) in rows.chunks(cc).enumerate() {
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
            return Err(ModelError::RowSum {
                child: cpt.child.clone(),
                row: r,
                sum,
            });
        }
    }
    Ok(Cpt {
        child: cpt.child.clone(),
        parents: cpt.parents.clone(),
        kind: CptKind::Table { rows },
    })
}

/// Parses and validates a network from JSON text.
pub fn parse_network(text: &str) -> Result<Network, ModelErrors> {
    let file: NetworkFile = serde_json::from_str(text).map_err(|e| {
        ModelErrors(vec![ModelError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }])
    })?;
    Network::new(file)
}

/// Serializes a network to pretty-printed JSON.
pub fn serialize_network(network: &Network) -> String {
    serde_json::to_string_pretty(network.file()).expect("network files always serialize")
}

/// Tests d-separation of `a` and `b` given `z`.
pub fn d_separated(
    network: &Network,
    a: &[VarId],
    b: &[VarId],
    z: &[VarId],
) -> Result<bool, ModelError> {
    for &v in a.iter().chain(b).chain(z) {
        if v >= network.len() {
            return Err(ModelError::UnknownVariable(format!("#{v}")));
        }
    }
    let reach = reachable(network, a, z);
    Ok(b.iter().all(|v| !reach[*v]))
}

/// Variables connected to `sources` by an active trail given `observed`.
fn reachable(network: &Network, sources: &[VarId], observed: &[VarId]) -> Vec<bool> {
    let n = network.len();
    let mut is_observed = vec![false; n];
    for &v in observed {
        is_observed[v] = true;
    }
    // Observed variables and their ancestors.
    let mut anc = vec![false; n];
    let mut stack: Vec<VarId> = observed.to_vec();
    while let Some(v) = stack.pop() {
        if !anc[v] {
            anc[v] = true;
            stack.extend_from_slice(network.parents(v));
        }
    }
    // (variable, arrived from a child) pairs.
    let mut visited = vec![[false; 2]; n];
    let mut out = vec![false; n];
    let mut queue: VecDeque<(VarId, bool)> = sources.iter().map(|&s| (s, true)).collect();
    while let Some((v, up)) = queue.pop_front() {
        if visited[v][up as usize] {
            continue;
        }
        visited[v][up as usize] = true;
        if !is_observed[v] {
            out[v] = true;
        }
        if up && !is_observed[v] {
            for &p in network.parents(v) {
                queue.push_back((p, true));
            }
            for &c in network.children(v) {
                queue.push_back((c, false));
            }
        } else if !up {
            if !is_observed[v] {
                for &c in network.children(v) {
                    queue.push_back((c, false));
                }
            }
            if anc[v] {
                for &p in network.parents(v) {
                    queue.push_back((p, true));
                }
            }
        }
    }
    for &s in sources {
        out[s] = true;
    }
    out
}

/// Incremental construction of networks from tables.
#[derive(Default)]
pub struct NetworkBuilder {
    file: NetworkFile,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn variable(mut self, name: &str, states: &[&str], role: Role) -> Self {
        self.file.variables.push(Variable {
            name: name.to_string(),
            states: states.iter().map(|s| s.to_string()).collect(),
            role,
        });
        self
    }

    pub fn table(mut self, child: &str, parents: &[&str], rows: Vec<f64>) -> Self {
        self.file.cpts.push(Cpt {
            child: child.to_string(),
            parents: parents.iter().map(|s| s.to_string()).collect(),
            kind: CptKind::Table { rows },
        });
        self
    }

    pub fn cpt(mut self, cpt: Cpt) -> Self {
        self.file.cpts.push(cpt);
        self
    }

    pub fn build(self) -> Result<Network, ModelErrors> {
        Network::new(self.file)
    }
}
