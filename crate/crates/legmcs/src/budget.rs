//! Node budgets for the disk searches.
//!
//! Every branch explored by a disk enumeration charges one node to a
//! [`Meter`]. Budgets keep degenerate inputs from hanging the process; the
//! searches return [`Error::BudgetExceeded`](crate::Error::BudgetExceeded)
//! instead of looping.

use crate::{Error, Result};

/// A limit on the number of search nodes a computation may expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub node_limit: u64,
}

impl Budget {
    pub const fn new(node_limit: u64) -> Self {
        Budget { node_limit }
    }

    pub fn meter(self) -> Meter {
        Meter { limit: self.node_limit, used: 0 }
    }
}

impl Default for Budget {
    /// Ten million nodes, far above anything the test corpus needs while
    /// still bounding adversarial inputs.
    fn default() -> Self {
        Budget::new(10_000_000)
    }
}

/// Running counter charged against a [`Budget`].
#[derive(Debug)]
pub struct Meter {
    limit: u64,
    used: u64,
}

impl Meter {
    pub fn charge(&mut self, nodes: u64) -> Result<()> {
        self.used = self.used.saturating_add(nodes);
        if self.used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
