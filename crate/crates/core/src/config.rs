//! Scheme configuration.

use crate::error::{invalid, Result};

/// Order `k` of both the SSP-RK integrator and the truncated partial sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RkOrder(u8);

impl RkOrder {
    pub const FIRST: RkOrder = RkOrder(1);
    pub const SECOND: RkOrder = RkOrder(2);
    pub const THIRD: RkOrder = RkOrder(3);

    pub fn new(k: u32) -> Result<Self> {
        match k {
            1..=3 => Ok(RkOrder(k as u8)),
            _ => Err(invalid("order", format!("k must be 1, 2 or 3, got {k}"))),
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }
}

/// Quadrature used for the first power of each `D` operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Quadrature {
    /// Fifth order WENO quadrature on three four-point stencils.
    #[default]
    Weno5,
    /// Sixth order linear rule on the full six-point stencil.
    Linear6,
}

/// Linear model equation a stability bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationKind {
    Advection,
    Diffusion,
}

/// Tabulated unconditional-stability bound `β_max` for one equation kind.
pub fn beta_max_table(k: RkOrder, kind: EquationKind) -> f64 {
    match (kind, k.get()) {
        (EquationKind::Advection, 1) => 2.0,
        (EquationKind::Advection, 2) => 1.0,
        (EquationKind::Advection, _) => 1.243,
        (EquationKind::Diffusion, 1) => 2.0,
        (EquationKind::Diffusion, 2) => 1.0,
        (EquationKind::Diffusion, _) => 0.8375,
    }
}

/// Tabulated bound for the combined advection-diffusion problem, roughly half
/// the smaller of the two single-kind bounds.
pub fn beta_max_combined(k: RkOrder) -> f64 {
    match k.get() {
        1 => 1.0,
        2 => 0.5,
        _ => 0.4167,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeConfig {
    pub order: RkOrder,
    pub beta: f64,
    pub cfl: f64,
    pub quadrature: Quadrature,
    pub filter_enabled: bool,
    /// Adds the fourth-derivative correction to the third order convection sum.
    pub cross_term_k3: bool,
}

impl SchemeConfig {
    /// Defaults: WENO quadrature, filter on for `k >= 2`, cross term on for `k = 3`.
    pub fn new(order: RkOrder, beta: f64, cfl: f64) -> Result<Self> {
        let cfg = Self {
            order,
            beta,
            cfl,
            quadrature: Quadrature::Weno5,
            filter_enabled: order.get() >= 2,
            cross_term_k3: order.get() == 3,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_quadrature(mut self, q: Quadrature) -> Self {
        self.quadrature = q;
        self
    }

    pub fn with_filter(mut self, on: bool) -> Self {
        self.filter_enabled = on;
        self
    }

    pub fn with_cross_term(mut self, on: bool) -> Self {
        self.cross_term_k3 = on && self.order.get() == 3;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(invalid("beta", format!("must be positive, got {}", self.beta)));
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return Err(invalid("cfl", format!("must be positive, got {}", self.cfl)));
        }
        if self.cross_term_k3 && self.order.get() != 3 {
            return Err(invalid("cross_term_k3", "only defined for k = 3"));
        }
        Ok(())
    }

    /// Checks that `β` lies under the tabulated bound for `kind`.
    pub fn is_unconditionally_stable_for(&self, kind: EquationKind) -> bool {
        self.beta <= beta_max_table(self.order, kind)
    }

    pub(crate) fn uses_cross_term(&self) -> bool {
        self.cross_term_k3 && self.order.get() == 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_range() {
        assert!(RkOrder::new(0).is_err());
        assert!(RkOrder::new(4).is_err());
        assert_eq!(RkOrder::new(3).unwrap().get(), 3);
    }

    #[test]
    fn combined_bounds_match_table() {
        assert_eq!(beta_max_combined(RkOrder::FIRST), 1.0);
        assert_eq!(beta_max_combined(RkOrder::SECOND), 0.5);
        let half_min = |k| {
            0.5 * beta_max_table(k, EquationKind::Advection)
                .min(beta_max_table(k, EquationKind::Diffusion))
        };
        for k in [RkOrder::FIRST, RkOrder::SECOND, RkOrder::THIRD] {
            assert!((beta_max_combined(k) - half_min(k)).abs() < 5e-3);
        }
    }

    #[test]
    fn cross_term_only_for_third_order() {
        let c = SchemeConfig::new(RkOrder::SECOND, 0.5, 1.0).unwrap().with_cross_term(true);
        assert!(!c.cross_term_k3);
        let mut bad = c.clone();
        bad.cross_term_k3 = true;
        assert!(bad.validate().is_err());
        assert!(SchemeConfig::new(RkOrder::FIRST, -1.0, 1.0).is_err());
    }
}
