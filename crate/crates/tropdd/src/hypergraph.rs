//! Directed hypergraphs with B-connectivity reachability.
//!
//! An edge has a tail set T(e) and a head set H(e); it "fires" only once the
//! *whole* tail has been reached. `v` is reachable from `u` when `v = u` or
//! some edge with fully reachable tail has `v` in its head. Reach sets are
//! closed and reachability is transitive, but it is not symmetric in the
//! digraph sense: reach sets of a union of sources can exceed the union of
//! reach sets, which is what makes SCC computation here subtle.
//!
//! Strongly connected components are classes of mutual reachability. They are
//! partially ordered by C1 ⪯ C2 iff C2 reaches C1 (equivalently some, hence
//! every, representative of C2 reaches C1). The extremality criterion
//! downstream only needs the *least* component, which this module answers in
//! near-linear time.

use std::fmt;

use crate::error::{Error, Result};

/// One directed hyperedge. Tail and head are non-empty sorted sets of node
/// identifiers (dense integers `1..=node_count`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    tail: Vec<usize>,
    head: Vec<usize>,
}

impl Hyperedge {
    pub fn new(mut tail: Vec<usize>, mut head: Vec<usize>) -> Result<Self> {
        if tail.is_empty() || head.is_empty() {
            return Err(Error::invalid("hyperedge tail and head must be non-empty"));
        }
        tail.sort_unstable();
        tail.dedup();
        head.sort_unstable();
        head.dedup();
        Ok(Hyperedge { tail, head })
    }

    pub fn tail(&self) -> &[usize] {
        &self.tail
    }

    pub fn head(&self) -> &[usize] {
        &self.head
    }
}

/// A directed hypergraph on nodes `1..=node_count`. Duplicate edges are kept
/// as given (they are harmless and count toward `size`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    node_count: usize,
    edges: Vec<Hyperedge>,
}

impl Hypergraph {
    pub fn new(node_count: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        for e in &edges {
            for &v in e.tail().iter().chain(e.head()) {
                if v == 0 || v > node_count {
                    return Err(Error::invalid(format!(
                        "node id {v} out of range 1..={node_count}"
                    )));
                }
            }
        }
        Ok(Hypergraph { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// size(H) = |N| + Σ_e (|T(e)| + |H(e)|), the usual input-size measure.
    pub fn size(&self) -> usize {
        self.node_count
            + self
                .edges
                .iter()
                .map(|e| e.tail().len() + e.head().len())
                .sum::<usize>()
    }

    /// Set of nodes B-reachable from `u`, sorted ascending (always contains
    /// `u`). Linear in size(H): every edge counter is decremented at most
    /// |T(e)| times.
    pub fn reachable_from(&self, u: usize) -> Result<Vec<usize>> {
        if u == 0 || u > self.node_count {
            return Err(Error::invalid(format!(
                "node id {u} out of range 1..={}",
                self.node_count
            )));
        }
        let idx = Incidence::build(self);
        let mut marked = vec![false; self.node_count + 1];
        let mut cnt: Vec<usize> = self.edges.iter().map(|e| e.tail().len()).collect();
        let mut queue = vec![u];
        marked[u] = true;
        while let Some(v) = queue.pop() {
            for &e in idx.edges_of_tail(v) {
                cnt[e] -= 1;
                if cnt[e] == 0 {
                    for &h in self.edges[e].head() {
                        if !marked[h] {
                            marked[h] = true;
                            queue.push(h);
                        }
                    }
                }
            }
        }
        Ok((1..=self.node_count).filter(|&v| marked[v]).collect())
    }

    /// Exact SCC partition with the full ⪯ order and the minimal components.
    /// Costs one B-visit per node (O(|N|·size)); use [`Hypergraph::has_least_scc`]
    /// when only the least component matters.
    pub fn scc_partition(&self) -> Result<SccPartition> {
        let n = self.node_count;
        let mut reach: Vec<Vec<bool>> = Vec::with_capacity(n + 1);
        reach.push(Vec::new()); // node 0 unused
        for u in 1..=n {
            let mut row = vec![false; n + 1];
            for v in self.reachable_from(u)? {
                row[v] = true;
            }
            reach.push(row);
        }
        // mutual reachability classes
        let mut comp_of = vec![usize::MAX; n + 1];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for u in 1..=n {
            if comp_of[u] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![u];
            comp_of[u] = id;
            for v in u + 1..=n {
                if comp_of[v] == usize::MAX && reach[u][v] && reach[v][u] {
                    comp_of[v] = id;
                    members.push(v);
                }
            }
            components.push(members);
        }
        // leq[i][j] : components[i] ⪯ components[j], i.e. j reaches i
        let k = components.len();
        let mut leq = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                leq[i][j] = reach[components[j][0]][components[i][0]];
            }
        }
        let minimal = (0..k)
            .filter(|&i| (0..k).all(|j| j == i || !leq[j][i]))
            .collect();
        Ok(SccPartition {
            components,
            minimal,
            leq,
            comp_of,
        })
    }

    /// All minimal components (the ⪯-minimal SCCs), each sorted, ordered by
    /// smallest member. Near-linear: O(size(H)·α(|N|)).
    pub fn minimal_sccs(&self) -> Vec<Vec<usize>> {
        let outcome = least_scc_engine(self);
        let mut comps: Vec<Vec<usize>> = outcome
            .minimal_reps
            .iter()
            .map(|&r| outcome.members_of(r))
            .collect();
        comps.sort_by_key(|c| c[0]);
        comps
    }

    /// The least SCC (the component below every other one, equivalently the
    /// unique component reachable from every node), or `None` when no such
    /// component exists. Near-linear: O(size(H)·α(|N|)).
    ///
    /// Leastness is verified, not assumed: the engine records, for every
    /// non-minimal component, a finished component it provably reaches, and
    /// this function checks that every such witness chain terminates at the
    /// candidate component.
    pub fn has_least_scc(&self) -> Result<Option<Vec<usize>>> {
        let outcome = least_scc_engine(self);
        if outcome.minimal_reps.len() != 1 {
            return Ok(None);
        }
        let least = outcome.minimal_reps[0];
        outcome.verify_all_reach(least)?;
        Ok(Some(outcome.members_of(least)))
    }

    /// Parse the debug fixture format: a `nodes <k>` line, then one line per
    /// edge reading `tail i j ... -> head p q ...`. `#` starts a comment.
    pub fn parse_debug(text: &str) -> Result<Hypergraph> {
        let mut node_count: Option<usize> = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match node_count {
                None => {
                    if toks.len() != 2 || toks[0] != "nodes" {
                        return Err(Error::parse(lineno, "expected 'nodes <k>'"));
                    }
                    let k: usize = toks[1]
                        .parse()
                        .map_err(|_| Error::parse(lineno, "bad node count"))?;
                    node_count = Some(k);
                }
                Some(_) => {
                    if toks.first() != Some(&"tail") {
                        return Err(Error::parse(lineno, "expected 'tail ... -> head ...'"));
                    }
                    let arrow = toks
                        .iter()
                        .position(|&t| t == "->")
                        .ok_or_else(|| Error::parse(lineno, "missing '->'"))?;
                    if toks.get(arrow + 1) != Some(&"head") {
                        return Err(Error::parse(lineno, "expected 'head' after '->'"));
                    }
                    let parse_ids = |ts: &[&str]| -> Result<Vec<usize>> {
                        ts.iter()
                            .map(|t| {
                                t.parse::<usize>()
                                    .map_err(|_| Error::parse(lineno, format!("bad node id '{t}'")))
                            })
                            .collect()
                    };
                    let tail = parse_ids(&toks[1..arrow])?;
                    let head = parse_ids(&toks[arrow + 2..])?;
                    edges.push(
                        Hyperedge::new(tail, head)
                            .map_err(|e| Error::parse(lineno, e.to_string()))?,
                    );
                }
            }
        }
        let node_count = node_count.ok_or_else(|| Error::parse(1, "missing 'nodes <k>' line"))?;
        Hypergraph::new(node_count, edges).map_err(|e| Error::parse(1, e.to_string()))
    }
}

/// Emits the same debug fixture format `parse_debug` reads.
impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes {}", self.node_count)?;
        for e in &self.edges {
            write!(f, "tail")?;
            for v in e.tail() {
                write!(f, " {v}")?;
            }
            write!(f, " -> head")?;
            for v in e.head() {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Result of [`Hypergraph::scc_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    /// Components sorted internally and by smallest member.
    pub components: Vec<Vec<usize>>,
    /// Indices (into `components`) of the ⪯-minimal components, ascending.
    pub minimal: Vec<usize>,
    /// `leq[i][j]` iff components[i] ⪯ components[j] (j reaches i).
    pub leq: Vec<Vec<bool>>,
    pub(crate) comp_of: Vec<usize>,
}

impl SccPartition {
    /// Component index of a node (1-based node id).
    pub fn component_of(&self, v: usize) -> usize {
        self.comp_of[v]
    }
}

/// Tail-incidence index shared by the visit routines.
struct Incidence {
    offsets: Vec<usize>,
    edge_ids: Vec<usize>,
}

impl Incidence {
    fn build(h: &Hypergraph) -> Incidence {
        let n = h.node_count;
        let mut counts = vec![0usize; n + 2];
        for e in &h.edges {
            for &v in e.tail() {
                counts[v + 1] += 1;
            }
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let offsets = counts.clone();
        let mut fill = counts;
        let mut edge_ids = vec![0usize; *offsets.last().unwrap()];
        for (id, e) in h.edges.iter().enumerate() {
            for &v in e.tail() {
                edge_ids[fill[v]] = id;
                fill[v] += 1;
            }
        }
        Incidence { offsets, edge_ids }
    }

    fn edges_of_tail(&self, v: usize) -> &[usize] {
        &self.edge_ids[self.offsets[v]..self.offsets[v + 1]]
    }
}

/// Union-find with path halving and union by size.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..=n).collect(),
            size: vec![1; n + 1],
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns the surviving representative.
    fn union(&mut self, a: usize, b: usize) -> usize {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return a;
        }
        let (big, small) = if self.size[a] >= self.size[b] { (a, b) } else { (b, a) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        big
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Fresh,
    Pending,
    Active,
    Done,
}

/// One suspended exploration on the chain stack. `rep` is the union-find
/// representative of the (mutually reachable) class under exploration; the
/// queue holds its not-yet-processed members; `pending` holds discovered but
/// unexplored nodes whose exploration this class provably dominates (the class
/// reaches them); `witness` records the first finished class this class was
/// seen to reach — its presence means the class is not minimal.
struct Frame {
    rep: usize,
    queue: Vec<usize>,
    pending: Vec<usize>,
    witness: Option<usize>,
}

struct EngineOutcome {
    uf_parent_resolved: Vec<usize>,
    minimal_reps: Vec<usize>,
    /// witness[rep] for finished non-minimal classes: a finished class it reaches.
    witness: Vec<Option<usize>>,
    node_count: usize,
}

impl EngineOutcome {
    fn members_of(&self, rep: usize) -> Vec<usize> {
        (1..=self.node_count)
            .filter(|&v| self.uf_parent_resolved[v] == rep)
            .collect()
    }

    /// Checks, via the recorded witness chains, that every component reaches
    /// `least`. Structural certificate of leastness; a failure would mean the
    /// engine produced an inconsistent classification.
    fn verify_all_reach(&self, least: usize) -> Result<()> {
        let n = self.node_count;
        // terminal[rep]: the minimal class this rep's witness chain ends at
        let mut terminal: Vec<usize> = vec![0; n + 1];
        for v in 1..=n {
            let mut r = self.uf_parent_resolved[v];
            let mut path = Vec::new();
            while terminal[r] == 0 {
                match self.witness[r] {
                    None => {
                        terminal[r] = r; // minimal class
                        break;
                    }
                    Some(next) => {
                        path.push(r);
                        r = next;
                    }
                }
            }
            let t = terminal[r];
            for p in path {
                terminal[p] = t;
            }
            if terminal[self.uf_parent_resolved[v]] != least {
                return Err(Error::Internal(format!(
                    "leastness verification failed at node {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Single pass over the hypergraph computing all ⪯-minimal SCCs.
///
/// Mechanics: a sequence of chained Gallo-style B-visits. Nodes are processed
/// at most once globally and every edge counter reaches zero at most once
/// globally, so the total work is O(size·α). The stack of frames satisfies
/// the chain invariant "each live frame's class reaches the next live frame's
/// class", maintained by these rules:
///  * an edge firing is attributed to the shallowest frame owning one of its
///    tails — that class reaches every tail (chain transitivity + class
///    mutuality), hence every head;
///  * a firing one of whose tails lies in a finished class is discarded: no
///    active class is known to reach that tail, so the heads cannot be
///    claimed (anything that does reach them is non-minimal anyway, which the
///    infection rule below records);
///  * delivering a head that is Active at a frame *above* the attribution
///    point collapses the stack segment between them into one class (the two
///    ends provably reach each other);
///  * delivering a head that is Pending at a frame above the attribution
///    point re-attributes it downward: the deeper frame now provably reaches
///    an unexplored node and must not finish before exploring it. The old
///    pending entry goes stale and is dropped at promotion time.
/// Popping a finished class marks the frame below as non-minimal ("infects"
/// it): the parent reaches the popped class but cannot belong to it. A frame
/// that empties uninfected has explored exactly its own class: a closed,
/// strongly connected set — a minimal SCC.
fn least_scc_engine(h: &Hypergraph) -> EngineOutcome {
    let n = h.node_count;
    let idx = Incidence::build(h);
    let mut uf = UnionFind::new(n);
    let mut status = vec![Status::Fresh; n + 1];
    let mut frame_of = vec![usize::MAX; n + 1]; // slot index, valid for Active reps
    // For Pending nodes: the rep of the frame currently responsible for
    // exploring them. Entries in pending lists whose recorded owner no longer
    // matches are stale duplicates.
    let mut pending_owner = vec![usize::MAX; n + 1];
    let mut witness: Vec<Option<usize>> = vec![None; n + 1];
    let mut minimal_reps: Vec<usize> = Vec::new();

    let m = h.edges.len();
    let mut cnt = vec![0u32; m];
    let mut stamp = vec![0u32; m];
    let mut chain: u32 = 0;

    let mut slots: Vec<Option<Frame>> = Vec::new();

    for start in 1..=n {
        if status[start] != Status::Fresh {
            continue;
        }
        chain += 1;
        debug_assert!(slots.is_empty());
        status[start] = Status::Active;
        frame_of[start] = 0;
        slots.push(Some(Frame {
            rep: start,
            queue: vec![start],
            pending: Vec::new(),
            witness: None,
        }));
        let mut top = 0usize;

        loop {
            // The slot at `top` is always live here.
            let next = slots[top].as_mut().expect("top frame is live").queue.pop();
            if let Some(v) = next {
                // Process v: decrement the counters of every edge with v in
                // its tail; fire the ones that complete.
                for &e in idx.edges_of_tail(v) {
                    if stamp[e] != chain {
                        stamp[e] = chain;
                        cnt[e] = h.edges[e].tail().len() as u32;
                    }
                    cnt[e] -= 1;
                    if cnt[e] != 0 {
                        continue;
                    }
                    // Fire. Attribute to the shallowest tail owner unless a
                    // tail already belongs to a finished class.
                    let mut attribution = usize::MAX;
                    for &t in h.edges[e].tail() {
                        let rep = uf.find(t);
                        match status[rep] {
                            Status::Done => {
                                attribution = usize::MAX;
                                break;
                            }
                            Status::Active => {
                                attribution = attribution.min(frame_of[rep]);
                            }
                            Status::Fresh | Status::Pending => {
                                unreachable!("fired edge has an unprocessed tail")
                            }
                        }
                    }
                    if attribution == usize::MAX {
                        continue;
                    }
                    for &head in h.edges[e].head() {
                        let rep = uf.find(head);
                        match status[rep] {
                            Status::Fresh => {
                                status[rep] = Status::Pending;
                                let f = slots[attribution]
                                    .as_mut()
                                    .expect("attribution frame is live");
                                pending_owner[head] = f.rep;
                                f.pending.push(head);
                            }
                            Status::Pending => {
                                let owner_slot = frame_of[uf.find(pending_owner[head])];
                                if attribution > owner_slot {
                                    let f = slots[attribution]
                                        .as_mut()
                                        .expect("attribution frame is live");
                                    pending_owner[head] = f.rep;
                                    f.pending.push(head);
                                }
                            }
                            Status::Done => {
                                let f = slots[attribution]
                                    .as_mut()
                                    .expect("attribution frame is live");
                                f.witness.get_or_insert(rep);
                            }
                            Status::Active => {
                                let at = frame_of[rep];
                                if at < attribution {
                                    // Collapse slots at..=attribution into one
                                    // class; later heads of this edge attribute
                                    // to the merged class at `at`.
                                    let mut acc =
                                        slots[at].take().expect("merge target is live");
                                    for s in at + 1..=attribution {
                                        if let Some(f) = slots[s].take() {
                                            let r = uf.union(acc.rep, f.rep);
                                            let (mut big, small) =
                                                if acc.queue.len() >= f.queue.len() {
                                                    (acc.queue, f.queue)
                                                } else {
                                                    (f.queue, acc.queue)
                                                };
                                            big.extend(small);
                                            acc.queue = big;
                                            let (mut bigp, smallp) =
                                                if acc.pending.len() >= f.pending.len() {
                                                    (acc.pending, f.pending)
                                                } else {
                                                    (f.pending, acc.pending)
                                                };
                                            bigp.extend(smallp);
                                            acc.pending = bigp;
                                            acc.witness = acc.witness.or(f.witness);
                                            acc.rep = r;
                                        }
                                    }
                                    frame_of[acc.rep] = at;
                                    slots[at] = Some(acc);
                                    if top <= attribution {
                                        top = at;
                                    }
                                    attribution = at;
                                }
                            }
                        }
                    }
                }
                continue;
            }
            // Queue empty: promote the next live pending discovery, if any.
            let mut promoted = None;
            loop {
                let frame = slots[top].as_mut().expect("top frame is live");
                let frame_rep = frame.rep;
                let Some(w) = frame.pending.pop() else { break };
                let wr = uf.find(w);
                if status[wr] == Status::Pending && uf.find(pending_owner[w]) == uf.find(frame_rep)
                {
                    promoted = Some(w);
                    break;
                }
                // stale entry (moved elsewhere or already promoted): drop
            }
            if let Some(w) = promoted {
                status[w] = Status::Active;
                pending_owner[w] = usize::MAX;
                frame_of[w] = slots.len();
                slots.push(Some(Frame {
                    rep: w,
                    queue: vec![w],
                    pending: Vec::new(),
                    witness: None,
                }));
                top = slots.len() - 1;
                continue;
            }
            // Frame exhausted: finish its class.
            let frame = slots[top].take().expect("top frame is live");
            let rep = uf.find(frame.rep);
            status[rep] = Status::Done;
            match frame.witness {
                Some(w) => witness[rep] = Some(w),
                None => minimal_reps.push(rep),
            }
            // Unwind to the previous live slot, infecting it.
            slots.truncate(top);
            match slots.iter().rposition(Option::is_some) {
                Some(t) => {
                    top = t;
                    slots.truncate(top + 1);
                    let parent = slots[top].as_mut().expect("live");
                    parent.witness.get_or_insert(rep);
                }
                None => {
                    slots.clear();
                    break;
                }
            }
        }
    }

    let uf_parent_resolved = (0..=n).map(|v| uf.find(v)).collect();
    EngineOutcome {
        uf_parent_resolved,
        minimal_reps,
        witness,
        node_count: n,
    }
}
