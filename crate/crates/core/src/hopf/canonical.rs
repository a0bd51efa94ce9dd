use super::characters::grouplike_basis;
use super::fixtures::constant;
use super::{FiniteFlatHopf, GroupTable};
use crate::dvr::{Lattice, Location};

/// Largest group order for which all relabelings are searched.
const MAX_ORDER: usize = 9;

/// A representative of the isomorphism class of `H`, computed from the
/// position of `H` inside a group algebra `K[Γ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub hopf: FiniteFlatHopf,
    pub group: GroupTable,
    pub lattice: Lattice,
    /// The canonical data describes the dual of `H`.
    pub dual_side: bool,
}

/// Canonical form of a Hopf order whose generic fibre is a group algebra
/// (grouplikes span) or a split function algebra (the dual's grouplikes span).
///
/// Two such objects are isomorphic exactly when their canonical forms agree.
pub fn canonical_form(h: &FiniteFlatHopf) -> Option<CanonicalForm> {
    if let Some((group, lattice)) = canonical_lattice(h) {
        let hopf = transport_into_group_algebra(h, &group, &lattice)?;
        return Some(CanonicalForm {
            hopf,
            group,
            lattice,
            dual_side: false,
        });
    }
    let dual = h.dualize();
    let (group, lattice) = canonical_lattice(&dual)?;
    let hopf = transport_into_group_algebra(&dual, &group, &lattice)?.dualize();
    Some(CanonicalForm {
        hopf,
        group,
        lattice,
        dual_side: true,
    })
}

/// The minimal relabeled group table of the grouplikes of `H`, and the
/// minimal Hermite lattice of `H` in grouplike coordinates over all relabelings
/// achieving that table.
pub fn canonical_lattice(h: &FiniteFlatHopf) -> Option<(GroupTable, Lattice)> {
    let (g, group) = grouplike_basis(h)?;
    let n = group.order();
    if n > MAX_ORDER {
        return None;
    }
    let ginv = g.inverse()?;
    let gens = ginv.to_cols();
    let ring = h.ring();

    let mut best_table: Option<GroupTable> = None;
    let mut best_perms: Vec<Vec<usize>> = Vec::new();
    for perm in relabelings(&group) {
        let t = group.relabel(&perm);
        match &best_table {
            Some(b) if t.table() > b.table() => {}
            Some(b) if t.table() == b.table() => best_perms.push(perm),
            _ => {
                best_table = Some(t);
                best_perms = vec![perm];
            }
        }
    }
    let table = best_table?;
    let lattice = best_perms
        .iter()
        .map(|perm| {
            let permuted: Vec<_> = gens
                .iter()
                .map(|v| {
                    let mut w = v.clone();
                    for (old, x) in v.iter().enumerate() {
                        w[perm[old]] = x.clone();
                    }
                    w
                })
                .collect();
            Lattice::hermite(&ring, n, &permuted)
        })
        .min_by(|a, b| a.basis().cmp(b.basis()))?;
    Some((table, lattice))
}

fn transport_into_group_algebra(h: &FiniteFlatHopf, group: &GroupTable, lattice: &Lattice) -> Option<FiniteFlatHopf> {
    let group_algebra = constant(h.ring(), group).dualize().base_change(super::BaseChange::FractionField).ok()?;
    group_algebra.transport(&lattice.matrix(), Location::Integral).ok()
}

/// Bijections sending the identity to 0, as `perm[old] = new`.
fn relabelings(group: &GroupTable) -> Vec<Vec<usize>> {
    let n = group.order();
    let others: Vec<usize> = (0..n).filter(|&x| x != group.identity()).collect();
    let mut out = Vec::new();
    let mut targets: Vec<usize> = (1..n).collect();
    permute(&mut targets, 0, &mut |t| {
        let mut perm = vec![0; n];
        for (&old, &new) in others.iter().zip(t.iter()) {
            perm[old] = new;
        }
        out.push(perm);
    });
    out
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
