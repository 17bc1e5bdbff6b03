//! Process-wide mutation switch for mutation testing of the theorem suite.
//!
//! When a mutation is active, the named core operation deliberately returns
//! wrong results. The switch is global: activate it only from a test binary
//! or CLI run that does nothing else concurrently.

use std::sync::atomic::{AtomicU8, Ordering};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Residuum degrades to the crisp implication (top if a <= b, else bottom).
    Residuum,
    /// Forward Zadeh image takes meets over fibres instead of joins.
    ZadehForward,
    /// Hull ignores the argument itself when the argument is a member.
    Hull,
    /// Convex-structure closure skips residuum scaling.
    SpaceClosure,
}

impl Mutation {
    pub const ALL: [Mutation; 4] =
        [Mutation::Residuum, Mutation::ZadehForward, Mutation::Hull, Mutation::SpaceClosure];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::Residuum => "residuum",
            Mutation::ZadehForward => "zadeh-forward",
            Mutation::Hull => "hull",
            Mutation::SpaceClosure => "space-closure",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }

    fn code(self) -> u8 {
        match self {
            Mutation::Residuum => 1,
            Mutation::ZadehForward => 2,
            Mutation::Hull => 3,
            Mutation::SpaceClosure => 4,
        }
    }
}

static ACTIVE: AtomicU8 = AtomicU8::new(0);

/// Activates `mutation` (or clears the switch with `None`).
pub fn set(mutation: Option<Mutation>) {
    ACTIVE.store(mutation.map_or(0, Mutation::code), Ordering::SeqCst);
}

pub fn current() -> Option<Mutation> {
    let code = ACTIVE.load(Ordering::Relaxed);
    Mutation::ALL.into_iter().find(|m| m.code() == code)
}

#[inline]
pub(crate) fn is_active(mutation: Mutation) -> bool {
    ACTIVE.load(Ordering::Relaxed) == mutation.code()
}

/// Clears the switch when dropped.
pub struct MutationGuard(());

impl MutationGuard {
    pub fn activate(mutation: Mutation) -> Self {
        set(Some(mutation));
        MutationGuard(())
    }
}

impl Drop for MutationGuard {
    fn drop(&mut self) {
        set(None);
    }
}
