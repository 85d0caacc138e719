//! Floating-point experiments: RK4 integration of the two commuting
//! Hamiltonian flows and quadrature probes of the inner-product integrals.

mod flow;
mod quadrature;

pub use flow::{
    flow_commutativity, flow_map, integrate_flow, order_test, ConservationReport, FlowError, FlowState, FlowSystem,
    Hamiltonian, HamiltonianField, OrderTest, Trajectory, SINGULAR_TOLERANCE,
};
pub use quadrature::{
    geometric_ladder, inner_product_probe, inner_product_value, LadderPoint, ProbeReport, QuadratureError,
    QuadratureSpec,
};
