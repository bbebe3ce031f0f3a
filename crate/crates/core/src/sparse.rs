use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::scalar::Scalar;

/// Adds `value` at `key`, dropping the entry if it cancels to zero.
pub(crate) fn accumulate<K: Ord, S: Scalar>(map: &mut BTreeMap<K, S>, key: K, value: S) {
    if value.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert(value);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += value;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

pub(crate) fn accumulate_hashed<K: Hash + Eq, S: Scalar>(map: &mut HashMap<K, S>, key: K, value: S) {
    if value.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match map.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert(value);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += value;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}
