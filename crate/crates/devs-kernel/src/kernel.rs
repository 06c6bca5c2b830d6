use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::atomic::Atomic;
use crate::coupled::{Component, CoupledModel, PortRef};
use crate::message::Message;
use crate::time::SimTime;
use crate::trace::{EventKind, Trace, TraceEntry};

/// Messages produced at one instant for the same destination are merged into
/// one bag. Producer timestamps may only differ by rounding noise up to this
/// bound; anything larger is a kernel bug.
pub const BAG_EPSILON: f64 = 1e-12;

const DEFAULT_STEP_LIMIT: u64 = 100_000_000;

/// Structural problem found while flattening a coupled model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("component name '{name}' in '{path}' is empty or contains reserved characters")]
    BadName { path: String, name: String },

    #[error("'{path}' declares component '{name}' more than once")]
    DuplicateChild { path: String, name: String },

    #[error("coupling in '{path}' references unknown component '{name}'")]
    UnknownChild { path: String, name: String },

    #[error("coupling in '{path}' references undeclared {direction} port '{port}' of '{component}'")]
    UnknownPort {
        path: String,
        component: String,
        port: String,
        direction: &'static str,
    },

    #[error("'{path}' couples output of '{component}' back to its own input")]
    SelfLoop { path: String, component: String },

    #[error("select order of '{path}' is not a permutation of its components: {detail}")]
    BadSelectOrder { path: String, detail: String },
}

/// Abort condition raised while running.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("model '{path}' failed at t={time}: {message}")]
    Model {
        path: String,
        time: String,
        message: String,
    },

    #[error("model '{path}' emitted on undeclared output port '{port}' at t={time}")]
    UndeclaredOutput {
        path: String,
        port: String,
        time: String,
    },

    #[error("step limit of {limit} exceeded at t={time}; last active component: '{path}'")]
    NonTerminating {
        path: String,
        time: String,
        limit: u64,
    },
}

/// What a single step did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    /// One internal event or one bag delivery was processed at this time.
    Advanced(SimTime),
    /// Nothing is scheduled and no bags are pending.
    Quiescent,
}

/// Tie-break among components scheduled at the same instant: the first one
/// in `priority` order wins. Returns `None` for an empty set.
pub fn select_imminent<'a>(imminents: &[&'a str], priority: &[&str]) -> Option<&'a str> {
    for p in priority {
        for i in imminents {
            if i == p {
                return Some(*i);
            }
        }
    }
    None
}

struct Slot {
    path: Arc<str>,
    model: Box<dyn Atomic>,
    last_time: SimTime,
    next_time: SimTime,
    epoch: u64,
    /// Resolved atomic-to-atomic destinations per declared output port,
    /// sorted by destination priority.
    fanout: HashMap<String, Vec<(usize, String)>>,
}

struct Bag {
    time: SimTime,
    messages: Vec<Message>,
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct HeapEntry {
    time: SimTime,
    slot: usize,
    epoch: u64,
}

/// Node of the flattened hierarchy, kept only while resolving couplings.
struct Node {
    path: String,
    parent: Option<(usize, String)>,
    children: HashMap<String, ChildRef>,
    eic: Vec<(String, PortRef)>,
    ic: Vec<(PortRef, PortRef)>,
    eoc: Vec<(PortRef, String)>,
    input_ports: Vec<String>,
    output_ports: Vec<String>,
}

#[derive(Clone, Copy)]
enum ChildRef {
    Atomic(usize),
    Coupled(usize),
}

impl Node {
    fn child(&self, name: &str) -> Option<ChildRef> {
        self.children.get(name).copied()
    }
}

/// Coupling lookup tables for one node, keyed by source endpoint. Built
/// once so that fan-out resolution stays linear in the number of links.
struct NodeRoutes {
    ic: HashMap<(String, String), Vec<PortRef>>,
    eoc: HashMap<(String, String), Vec<String>>,
    eic: HashMap<String, Vec<PortRef>>,
}

fn index_routes(nodes: &[Node]) -> Vec<NodeRoutes> {
    nodes
        .iter()
        .map(|node| {
            let mut routes = NodeRoutes {
                ic: HashMap::new(),
                eoc: HashMap::new(),
                eic: HashMap::new(),
            };
            for (src, dst) in &node.ic {
                routes
                    .ic
                    .entry((src.component.clone(), src.port.clone()))
                    .or_default()
                    .push(dst.clone());
            }
            for (src, own_port) in &node.eoc {
                routes
                    .eoc
                    .entry((src.component.clone(), src.port.clone()))
                    .or_default()
                    .push(own_port.clone());
            }
            for (own_port, dst) in &node.eic {
                routes.eic.entry(own_port.clone()).or_default().push(dst.clone());
            }
            routes
        })
        .collect()
}

/// Sequential simulator over a flattened component tree.
///
/// The kernel advances the clock to the earliest scheduled event, fires one
/// component at a time and buffers routed messages. A destination's buffered
/// bag is handed over in a single external transition once no component
/// remains scheduled at the current instant, so every receiver sees all
/// same-time messages together. Internal events therefore precede bag
/// deliveries at equal time, and both follow the flattened select order.
pub struct Kernel {
    slots: Vec<Slot>,
    clock: SimTime,
    heap: BinaryHeap<Reverse<HeapEntry>>,
    bags: Vec<Option<Bag>>,
    pending: BTreeSet<usize>,
    trace: Trace,
    step_limit: u64,
    steps_taken: u64,
    internal_events: u64,
    external_events: u64,
}

impl std::fmt::Debug for Kernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Kernel")
            .field("clock", &self.clock)
            .field("components", &self.slots.len())
            .field("steps_taken", &self.steps_taken)
            .finish_non_exhaustive()
    }
}

impl Kernel {
    /// Flattens `root` into a kernel starting at time `t0`. All couplings
    /// are checked and resolved to direct atomic-to-atomic fan-out lists.
    pub fn new(root: CoupledModel, t0: SimTime) -> Result<Self, BuildError> {
        let mut nodes: Vec<Node> = Vec::new();
        let mut slots: Vec<Slot> = Vec::new();
        let mut slot_parents: Vec<(usize, String)> = Vec::new();
        let root_name = root.name().to_string();
        check_name(&root_name, "")?;
        flatten(root, root_name, None, &mut nodes, &mut slots, &mut slot_parents)?;

        for node in &nodes {
            validate_node(node, &nodes, &slots)?;
        }

        let routes = index_routes(&nodes);
        for idx in 0..slots.len() {
            let (parent_node, name) = slot_parents[idx].clone();
            let ports: Vec<String> = slots[idx]
                .model
                .output_ports()
                .iter()
                .map(|p| p.to_string())
                .collect();
            for port in ports {
                let mut dests = resolve_fanout(&nodes, &routes, parent_node, &name, &port);
                dests.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
                slots[idx].fanout.insert(port, dests);
            }
        }

        let bag_count = slots.len();
        let mut kernel = Kernel {
            slots,
            clock: t0,
            heap: BinaryHeap::new(),
            bags: (0..bag_count).map(|_| None).collect(),
            pending: BTreeSet::new(),
            trace: Trace::default(),
            step_limit: DEFAULT_STEP_LIMIT,
            steps_taken: 0,
            internal_events: 0,
            external_events: 0,
        };
        for idx in 0..kernel.slots.len() {
            kernel.slots[idx].last_time = t0;
            kernel.slots[idx].next_time = t0 + kernel.slots[idx].model.ta();
            kernel.push_schedule(idx);
        }
        Ok(kernel)
    }

    pub fn clock(&self) -> SimTime {
        self.clock
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn take_trace(&mut self) -> Trace {
        std::mem::take(&mut self.trace)
    }

    /// Number of internal transitions taken so far.
    pub fn internal_events(&self) -> u64 {
        self.internal_events
    }

    /// Number of bag deliveries taken so far.
    pub fn external_events(&self) -> u64 {
        self.external_events
    }

    /// Aborts `run_until` with `NonTerminating` after this many steps.
    pub fn set_step_limit(&mut self, limit: u64) {
        self.step_limit = limit;
    }

    /// Component paths in flattened select-priority order.
    pub fn component_paths(&self) -> Vec<&str> {
        self.slots.iter().map(|s| &*s.path).collect()
    }

    /// Remaining lifetime reported by the named component, if it exists.
    pub fn ta_of(&self, path: &str) -> Option<SimTime> {
        self.slots
            .iter()
            .find(|s| &*s.path == path)
            .map(|s| s.model.ta())
    }

    /// Resolved destinations for one output port of one component.
    pub fn fanout_of(&self, path: &str, port: &str) -> Option<Vec<(&str, &str)>> {
        let slot = self.slots.iter().find(|s| &*s.path == path)?;
        let dests = slot.fanout.get(port)?;
        Some(
            dests
                .iter()
                .map(|(idx, p)| (&*self.slots[*idx].path, p.as_str()))
                .collect(),
        )
    }

    /// Earliest time at which anything is left to do; infinity when quiescent.
    pub fn next_event_time(&mut self) -> SimTime {
        if !self.pending.is_empty() {
            return self.clock;
        }
        self.sync_heap();
        match self.heap.peek() {
            Some(Reverse(entry)) => entry.time,
            None => SimTime::INFINITY,
        }
    }

    pub fn is_quiescent(&mut self) -> bool {
        self.next_event_time().is_infinite()
    }

    /// Processes exactly one event: the select-minimal component scheduled
    /// at the current instant, else the select-minimal pending bag, else the
    /// clock advances to the next scheduled instant and that component fires.
    pub fn step(&mut self) -> Result<StepOutcome, KernelError> {
        self.sync_heap();
        let next_internal = self.heap.peek().map(|Reverse(e)| (e.time, e.slot));

        if let Some((time, idx)) = next_internal {
            if time == self.clock {
                self.budget(idx)?;
                self.heap.pop();
                self.fire(idx)?;
                return Ok(StepOutcome::Advanced(self.clock));
            }
        }
        if let Some(&idx) = self.pending.first() {
            self.budget(idx)?;
            self.deliver(idx)?;
            return Ok(StepOutcome::Advanced(self.clock));
        }
        match next_internal {
            Some((time, idx)) => {
                self.budget(idx)?;
                self.heap.pop();
                self.clock = time;
                self.fire(idx)?;
                Ok(StepOutcome::Advanced(time))
            }
            None => Ok(StepOutcome::Quiescent),
        }
    }

    /// Steps until nothing is scheduled at or before `t_end`. The clock
    /// never advances past `t_end`; events scheduled later stay pending.
    pub fn run_until(&mut self, t_end: SimTime) -> Result<SimTime, KernelError> {
        loop {
            let next = self.next_event_time();
            if next.is_infinite() || next > t_end {
                return Ok(self.clock);
            }
            self.step()?;
        }
    }

    fn sync_heap(&mut self) {
        while let Some(Reverse(entry)) = self.heap.peek() {
            if self.slots[entry.slot].epoch == entry.epoch {
                break;
            }
            self.heap.pop();
        }
    }

    fn budget(&mut self, idx: usize) -> Result<(), KernelError> {
        self.steps_taken += 1;
        if self.steps_taken > self.step_limit {
            return Err(KernelError::NonTerminating {
                path: self.slots[idx].path.to_string(),
                time: self.clock.to_string(),
                limit: self.step_limit,
            });
        }
        Ok(())
    }

    fn push_schedule(&mut self, idx: usize) {
        let next = self.slots[idx].next_time;
        if next.is_finite() {
            self.heap.push(Reverse(HeapEntry {
                time: next,
                slot: idx,
                epoch: self.slots[idx].epoch,
            }));
        }
    }

    fn reschedule(&mut self, idx: usize) {
        let slot = &mut self.slots[idx];
        slot.last_time = self.clock;
        slot.epoch += 1;
        slot.next_time = self.clock + slot.model.ta();
        self.push_schedule(idx);
    }

    fn model_error(&self, idx: usize, err: crate::atomic::ModelError) -> KernelError {
        KernelError::Model {
            path: self.slots[idx].path.to_string(),
            time: self.clock.to_string(),
            message: err.message().to_string(),
        }
    }

    /// Output, routing and internal transition of one imminent component.
    fn fire(&mut self, idx: usize) -> Result<(), KernelError> {
        let outputs = self.slots[idx].model.lambda();
        self.trace.record(TraceEntry {
            time: self.clock,
            component: self.slots[idx].path.clone(),
            kind: EventKind::Output,
            messages: outputs.clone(),
            note: None,
        });

        for message in outputs {
            if !self.slots[idx].model.output_ports().contains(&message.port.as_str()) {
                return Err(KernelError::UndeclaredOutput {
                    path: self.slots[idx].path.to_string(),
                    port: message.port,
                    time: self.clock.to_string(),
                });
            }
            let destinations = self.slots[idx]
                .fanout
                .get(&message.port)
                .cloned()
                .unwrap_or_default();
            if destinations.is_empty() {
                let note = format!("dropped unconnected output {}={}", message.port, message.value);
                self.warn(idx, note);
                continue;
            }
            for (dest, in_port) in destinations {
                let bag = self.bags[dest].get_or_insert_with(|| Bag {
                    time: self.clock,
                    messages: Vec::new(),
                });
                debug_assert!(
                    (bag.time.as_minutes() - self.clock.as_minutes()).abs() <= BAG_EPSILON,
                    "bag for {} holds messages from a different instant",
                    self.slots[dest].path
                );
                bag.messages.push(Message::new(in_port, message.value.clone()));
                self.pending.insert(dest);
            }
        }

        let result = self.slots[idx].model.delta_int();
        result.map_err(|e| self.model_error(idx, e))?;
        self.trace.record(TraceEntry {
            time: self.clock,
            component: self.slots[idx].path.clone(),
            kind: EventKind::Internal,
            messages: Vec::new(),
            note: None,
        });
        self.internal_events += 1;
        self.reschedule(idx);
        Ok(())
    }

    /// Hands the buffered bag to its destination in one external transition.
    fn deliver(&mut self, idx: usize) -> Result<(), KernelError> {
        self.pending.remove(&idx);
        let bag = self.bags[idx].take().expect("pending index without a bag");
        let elapsed = self.clock - self.slots[idx].last_time;
        debug_assert!(
            elapsed <= self.slots[idx].model.ta()
                || elapsed.as_minutes() - self.slots[idx].model.ta().as_minutes() <= 1e-9,
            "elapsed time exceeds the remaining lifetime of {}",
            self.slots[idx].path
        );

        let result = self.slots[idx].model.delta_ext(elapsed, &bag.messages);
        let warnings = result.map_err(|e| self.model_error(idx, e))?;
        self.trace.record(TraceEntry {
            time: self.clock,
            component: self.slots[idx].path.clone(),
            kind: EventKind::External,
            messages: bag.messages,
            note: None,
        });
        for note in warnings {
            self.warn(idx, note);
        }
        self.external_events += 1;
        self.reschedule(idx);
        Ok(())
    }

    fn warn(&mut self, idx: usize, note: String) {
        self.trace.record(TraceEntry {
            time: self.clock,
            component: self.slots[idx].path.clone(),
            kind: EventKind::Warning,
            messages: Vec::new(),
            note: Some(note),
        });
    }
}

fn check_name(name: &str, path: &str) -> Result<(), BuildError> {
    if name.is_empty() || name.contains(['.', '\t', '\n']) {
        return Err(BuildError::BadName {
            path: path.to_string(),
            name: name.to_string(),
        });
    }
    Ok(())
}

/// Depth-first flattening. Children are visited in select order, which makes
/// slot indices equal to the global tie-break priority.
fn flatten(
    model: CoupledModel,
    path: String,
    parent: Option<(usize, String)>,
    nodes: &mut Vec<Node>,
    slots: &mut Vec<Slot>,
    slot_parents: &mut Vec<(usize, String)>,
) -> Result<usize, BuildError> {
    let mut seen: Vec<&str> = Vec::new();
    let mut unique: HashSet<&str> = HashSet::new();
    for (name, _) in model.components() {
        check_name(name, &path)?;
        if !unique.insert(name) {
            return Err(BuildError::DuplicateChild {
                path: path.clone(),
                name: name.to_string(),
            });
        }
        seen.push(name);
    }

    let order: Vec<String> = match model.select_order() {
        Some(order) => {
            let names: BTreeSet<&str> = seen.iter().copied().collect();
            let ordered: BTreeSet<&str> = order.iter().map(String::as_str).collect();
            if order.len() != seen.len() || names != ordered {
                return Err(BuildError::BadSelectOrder {
                    path: path.clone(),
                    detail: format!("components {seen:?} vs order {order:?}"),
                });
            }
            order.to_vec()
        }
        None => seen.iter().map(|s| s.to_string()).collect(),
    };

    let node_idx = nodes.len();
    nodes.push(Node {
        path: path.clone(),
        parent,
        children: HashMap::new(),
        eic: model.eic().to_vec(),
        ic: model.ic().to_vec(),
        eoc: model.eoc().to_vec(),
        input_ports: model.input_ports().to_vec(),
        output_ports: model.output_ports().to_vec(),
    });

    let mut parts: HashMap<String, Component> = HashMap::new();
    for (name, component) in model.take_components() {
        parts.insert(name, component);
    }

    for name in order {
        let component = parts.remove(&name).expect("validated select order");
        let child_path = format!("{path}.{name}");
        let child = match component {
            Component::Atomic(model) => {
                let idx = slots.len();
                slots.push(Slot {
                    path: Arc::from(child_path.as_str()),
                    model,
                    last_time: SimTime::ZERO,
                    next_time: SimTime::INFINITY,
                    epoch: 0,
                    fanout: HashMap::new(),
                });
                slot_parents.push((node_idx, name.clone()));
                ChildRef::Atomic(idx)
            }
            Component::Coupled(inner) => {
                let idx = flatten(
                    inner,
                    child_path,
                    Some((node_idx, name.clone())),
                    nodes,
                    slots,
                    slot_parents,
                )?;
                ChildRef::Coupled(idx)
            }
        };
        nodes[node_idx].children.insert(name, child);
    }
    Ok(node_idx)
}

fn input_ports_of(child: ChildRef, nodes: &[Node], slots: &[Slot]) -> Vec<String> {
    match child {
        ChildRef::Atomic(idx) => slots[idx].model.input_ports().iter().map(|p| p.to_string()).collect(),
        ChildRef::Coupled(idx) => nodes[idx].input_ports.clone(),
    }
}

fn output_ports_of(child: ChildRef, nodes: &[Node], slots: &[Slot]) -> Vec<String> {
    match child {
        ChildRef::Atomic(idx) => slots[idx].model.output_ports().iter().map(|p| p.to_string()).collect(),
        ChildRef::Coupled(idx) => nodes[idx].output_ports.clone(),
    }
}

fn validate_node(node: &Node, nodes: &[Node], slots: &[Slot]) -> Result<(), BuildError> {
    let lookup = |name: &str| -> Result<ChildRef, BuildError> {
        node.child(name).ok_or_else(|| BuildError::UnknownChild {
            path: node.path.clone(),
            name: name.to_string(),
        })
    };
    let check_port = |child: &str, port: &str, ports: &[String], direction: &'static str| {
        if ports.iter().any(|p| p == port) {
            Ok(())
        } else {
            Err(BuildError::UnknownPort {
                path: node.path.clone(),
                component: child.to_string(),
                port: port.to_string(),
                direction,
            })
        }
    };

    for (own_port, dst) in &node.eic {
        check_port("self", own_port, &node.input_ports, "input")?;
        let child = lookup(&dst.component)?;
        check_port(&dst.component, &dst.port, &input_ports_of(child, nodes, slots), "input")?;
    }
    for (src, dst) in &node.ic {
        if src.component == dst.component {
            return Err(BuildError::SelfLoop {
                path: node.path.clone(),
                component: src.component.clone(),
            });
        }
        let src_child = lookup(&src.component)?;
        check_port(&src.component, &src.port, &output_ports_of(src_child, nodes, slots), "output")?;
        let dst_child = lookup(&dst.component)?;
        check_port(&dst.component, &dst.port, &input_ports_of(dst_child, nodes, slots), "input")?;
    }
    for (src, own_port) in &node.eoc {
        let child = lookup(&src.component)?;
        check_port(&src.component, &src.port, &output_ports_of(child, nodes, slots), "output")?;
        check_port("self", own_port, &node.output_ports, "output")?;
    }
    Ok(())
}

/// Transitive closure of one output port down to atomic destinations.
/// Internal couplings fan out at the same level, external output couplings
/// lift the message to the parent, external input couplings of nested
/// coupled models push it back down.
fn resolve_fanout(
    nodes: &[Node],
    routes: &[NodeRoutes],
    start_node: usize,
    child_name: &str,
    port: &str,
) -> Vec<(usize, String)> {
    let mut result = Vec::new();
    let mut stack = vec![(start_node, child_name.to_string(), port.to_string())];
    while let Some((n, component, port)) = stack.pop() {
        let key = (component, port);
        if let Some(dests) = routes[n].ic.get(&key) {
            for dst in dests {
                descend(nodes, routes, n, dst, &mut result);
            }
        }
        if let Some(own_ports) = routes[n].eoc.get(&key) {
            if let Some((parent, my_name)) = &nodes[n].parent {
                for own_port in own_ports {
                    stack.push((*parent, my_name.clone(), own_port.clone()));
                }
            }
        }
    }
    result
}

fn descend(
    nodes: &[Node],
    routes: &[NodeRoutes],
    node_idx: usize,
    target: &PortRef,
    out: &mut Vec<(usize, String)>,
) {
    match nodes[node_idx].child(&target.component).expect("validated coupling") {
        ChildRef::Atomic(slot) => out.push((slot, target.port.clone())),
        ChildRef::Coupled(inner) => {
            if let Some(dests) = routes[inner].eic.get(&target.port) {
                for dst in dests {
                    descend(nodes, routes, inner, dst, out);
                }
            }
        }
    }
}
