//! Memoized big-integer factorials.
//!
//! The table only ever grows. Readers take a shared lock and never see a
//! partially written entry: new entries are computed into a scratch buffer
//! and appended under the write lock in one step.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::One;

#[derive(Debug)]
pub struct FactorialTable {
    entries: RwLock<Vec<BigUint>>,
}

impl Default for FactorialTable {
    fn default() -> Self {
        Self::new()
    }
}

impl FactorialTable {
    pub fn new() -> Self {
        Self {
            entries: RwLock::new(vec![BigUint::one()]),
        }
    }

    /// Number of memoized entries (`0!` through `(len-1)!`).
    pub fn len(&self) -> usize {
        self.entries.read().expect("factorial table poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, n: usize) -> BigUint {
        {
            let table = self.entries.read().expect("factorial table poisoned");
            if let Some(v) = table.get(n) {
                return v.clone();
            }
        }
        let mut table = self.entries.write().expect("factorial table poisoned");
        // another writer may have extended the table meanwhile
        let start = table.len();
        if n >= start {
            let mut acc = table[start - 1].clone();
            let mut fresh = Vec::with_capacity(n + 1 - start);
            for k in start..=n {
                acc *= BigUint::from(k);
                fresh.push(acc.clone());
            }
            table.extend(fresh);
        }
        table[n].clone()
    }
}

/// Process-wide table shared by every caller of [`factorial`].
pub fn global_table() -> &'static FactorialTable {
    static TABLE: OnceLock<FactorialTable> = OnceLock::new();
    TABLE.get_or_init(FactorialTable::new)
}

pub fn factorial(n: usize) -> BigUint {
    global_table().get(n)
}
