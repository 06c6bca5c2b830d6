use crate::atomic::Atomic;

/// Link endpoint: a named child component and one of its ports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortRef {
    pub component: String,
    pub port: String,
}

impl PortRef {
    pub fn new(component: impl Into<String>, port: impl Into<String>) -> Self {
        Self {
            component: component.into(),
            port: port.into(),
        }
    }
}

/// Where a routed message goes after one coupling hop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RouteTarget {
    /// Input port of a sibling component at the same level.
    Component(PortRef),
    /// One of the model's own output ports; propagates to the parent level.
    Output(String),
}

/// A child of a coupled model.
pub enum Component {
    Atomic(Box<dyn Atomic>),
    Coupled(CoupledModel),
}

/// Hierarchical composition of components with explicit couplings.
///
/// Couplings come in three families: external input (own input port to a
/// child input), internal (child output to a sibling input) and external
/// output (child output to an own output port). A component may never feed
/// its own input at the same level. Structure is validated when a kernel is
/// built from the root model.
pub struct CoupledModel {
    name: String,
    components: Vec<(String, Component)>,
    eic: Vec<(String, PortRef)>,
    ic: Vec<(PortRef, PortRef)>,
    eoc: Vec<(PortRef, String)>,
    input_ports: Vec<String>,
    output_ports: Vec<String>,
    select_order: Option<Vec<String>>,
}

impl CoupledModel {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            components: Vec::new(),
            eic: Vec::new(),
            ic: Vec::new(),
            eoc: Vec::new(),
            input_ports: Vec::new(),
            output_ports: Vec::new(),
            select_order: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn add_input_port(&mut self, port: impl Into<String>) {
        self.input_ports.push(port.into());
    }

    pub fn add_output_port(&mut self, port: impl Into<String>) {
        self.output_ports.push(port.into());
    }

    pub fn add_atomic(&mut self, name: impl Into<String>, model: impl Atomic + 'static) {
        self.components.push((name.into(), Component::Atomic(Box::new(model))));
    }

    pub fn add_coupled(&mut self, name: impl Into<String>, model: CoupledModel) {
        self.components.push((name.into(), Component::Coupled(model)));
    }

    /// Couples one of the model's own input ports to a child input port.
    pub fn couple_input(&mut self, own_port: impl Into<String>, child: impl Into<String>, child_port: impl Into<String>) {
        self.eic.push((own_port.into(), PortRef::new(child, child_port)));
    }

    /// Couples a child output port to a sibling child input port.
    pub fn couple(
        &mut self,
        src: impl Into<String>,
        src_port: impl Into<String>,
        dst: impl Into<String>,
        dst_port: impl Into<String>,
    ) {
        self.ic.push((PortRef::new(src, src_port), PortRef::new(dst, dst_port)));
    }

    /// Couples a child output port to one of the model's own output ports.
    pub fn couple_output(&mut self, child: impl Into<String>, child_port: impl Into<String>, own_port: impl Into<String>) {
        self.eoc.push((PortRef::new(child, child_port), own_port.into()));
    }

    /// Fixes the tie-break order used when several children are scheduled at
    /// the same instant. Must list every child exactly once. Without it the
    /// insertion order applies.
    pub fn set_select_order<S: Into<String>>(&mut self, order: Vec<S>) {
        self.select_order = Some(order.into_iter().map(Into::into).collect());
    }

    pub fn components(&self) -> impl Iterator<Item = (&str, &Component)> {
        self.components.iter().map(|(n, c)| (n.as_str(), c))
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components
            .iter()
            .find_map(|(n, c)| (n == name).then_some(c))
    }

    pub fn input_ports(&self) -> &[String] {
        &self.input_ports
    }

    pub fn output_ports(&self) -> &[String] {
        &self.output_ports
    }

    pub(crate) fn eic(&self) -> &[(String, PortRef)] {
        &self.eic
    }

    pub(crate) fn ic(&self) -> &[(PortRef, PortRef)] {
        &self.ic
    }

    pub(crate) fn eoc(&self) -> &[(PortRef, String)] {
        &self.eoc
    }

    pub(crate) fn select_order(&self) -> Option<&[String]> {
        self.select_order.as_deref()
    }

    pub(crate) fn take_components(self) -> Vec<(String, Component)> {
        self.components
    }

    /// Resolves one coupling hop for a message leaving `source`: every
    /// internal link fans it out to sibling inputs, every external output
    /// link lifts it to this model's boundary. An empty result means the
    /// output is unconnected at this level.
    pub fn route(&self, source: &PortRef) -> Vec<RouteTarget> {
        let mut targets = Vec::new();
        for (src, dst) in &self.ic {
            if src == source {
                targets.push(RouteTarget::Component(dst.clone()));
            }
        }
        for (src, own_port) in &self.eoc {
            if src == source {
                targets.push(RouteTarget::Output(own_port.clone()));
            }
        }
        targets
    }

    /// Resolves one coupling hop for a message arriving on one of the
    /// model's own input ports.
    pub fn route_input(&self, own_port: &str) -> Vec<PortRef> {
        self.eic
            .iter()
            .filter(|(port, _)| port == own_port)
            .map(|(_, dst)| dst.clone())
            .collect()
    }
}
