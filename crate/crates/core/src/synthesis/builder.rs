use crate::error::Result;
use crate::letters::LetterSequence;
use crate::netlist::{
    DeliveryPlan, Edge, Netlist, Node, NodeId, NodeKind, PortRef, RatioConvention,
};
use crate::scalar::Scalar;
use crate::spec::{Method, Wavelength, Zone};

/// Open end of a waveguide, in letter order.
#[derive(Debug, Clone, Copy)]
struct Wire<S> {
    from: PortRef,
    wavelength: Wavelength,
    length: Option<S>,
}

/// Mirrors every letters-game operation onto an element graph.
pub(crate) struct Builder<S> {
    m: u32,
    nodes: Vec<Node<S>>,
    edges: Vec<Edge<S>>,
    wires: Vec<Wire<S>>,
    seq: LetterSequence,
}

impl<S: Scalar> Builder<S> {
    pub fn new(m: u32) -> Self {
        let mut nodes = Vec::with_capacity(m as usize);
        let mut wires = Vec::with_capacity(m as usize);
        for mu in 1..=m {
            let id = NodeId(mu - 1);
            nodes.push(Node {
                id,
                kind: NodeKind::Source {
                    wavelength: Wavelength(mu),
                },
            });
            wires.push(Wire {
                from: PortRef::new(id, 0),
                wavelength: Wavelength(mu),
                length: None,
            });
        }
        Self {
            m,
            nodes,
            edges: Vec::new(),
            wires,
            seq: LetterSequence::initial(m),
        }
    }

    pub fn letters(&self) -> &[Wavelength] {
        self.seq.letters()
    }

    fn add_node(&mut self, kind: NodeKind<S>) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(Node { id, kind });
        id
    }

    fn connect(&mut self, wire: Wire<S>, to: PortRef) {
        self.edges.push(Edge {
            from: wire.from,
            to,
            length: wire.length,
        });
    }

    pub fn split(&mut self, position: usize) -> Result<NodeId> {
        self.seq.split(position)?;
        let wire = self.wires[position];
        let id = self.add_node(NodeKind::Splitter {
            ratio: None,
            convention: RatioConvention::Left,
        });
        self.connect(wire, PortRef::new(id, 0));
        let fresh = |port| Wire {
            from: PortRef::new(id, port),
            wavelength: wire.wavelength,
            length: None,
        };
        self.wires[position] = fresh(0);
        self.wires.insert(position + 1, fresh(1));
        Ok(id)
    }

    pub fn swap(&mut self, position: usize) -> Result<NodeId> {
        self.seq.swap(position)?;
        let (left, right) = (self.wires[position], self.wires[position + 1]);
        let id = self.add_node(NodeKind::crossing(left.wavelength, right.wavelength));
        self.connect(left, PortRef::new(id, 0));
        self.connect(right, PortRef::new(id, 1));
        // the left input exits on the right
        self.wires[position] = Wire {
            from: PortRef::new(id, 0),
            wavelength: right.wavelength,
            length: None,
        };
        self.wires[position + 1] = Wire {
            from: PortRef::new(id, 1),
            wavelength: left.wavelength,
            length: None,
        };
        Ok(id)
    }

    /// Adds waveguide length to the open wire at `position`.
    pub fn extend(&mut self, position: usize, length: S) {
        let wire = &mut self.wires[position];
        wire.length = Some(wire.length.unwrap_or_else(S::zero) + length);
    }

    /// Brings the nearest copy of `want` at or right of `position` leftward.
    pub fn bubble_into(&mut self, position: usize, want: Wavelength) -> Result<()> {
        let from = (position..self.wires.len())
            .find(|&j| self.wires[j].wavelength == want)
            .expect("every target letter is still present to the right");
        for p in (position..from).rev() {
            self.swap(p)?;
        }
        Ok(())
    }

    /// Terminates every open wire in an output node, in letter order.
    pub fn finish(
        mut self,
        n: u32,
        method: Method,
        zone_of: impl Fn(usize) -> (Zone, Wavelength),
    ) -> (Netlist<S>, LetterSequence) {
        let wires = std::mem::take(&mut self.wires);
        for (k, wire) in wires.into_iter().enumerate() {
            let (zone, wavelength) = zone_of(k);
            let id = self.add_node(NodeKind::Output { zone, wavelength });
            self.connect(wire, PortRef::new(id, 0));
        }
        let netlist = Netlist {
            m: self.m,
            n,
            method: Some(method),
            plan: DeliveryPlan::uniform(self.m, n),
            nodes: self.nodes,
            edges: self.edges,
        };
        (netlist, self.seq)
    }
}
