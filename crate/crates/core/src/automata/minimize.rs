//! Hopcroft partition refinement and canonical renumbering, shared by
//! acceptors and automata with output.

use std::collections::VecDeque;

/// Raw complete automaton: `delta[q * nsym + a]`, one label per state.
pub(crate) struct RawMachine {
    pub nsym: usize,
    pub initial: u32,
    pub delta: Vec<u32>,
    pub labels: Vec<u32>,
}

impl RawMachine {
    fn states(&self) -> usize {
        self.labels.len()
    }

    /// States in BFS order from the initial state, symbols ascending.
    fn bfs_order(&self) -> Vec<u32> {
        let n = self.states();
        let mut seen = vec![false; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen[self.initial as usize] = true;
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            let row = &self.delta[q as usize * self.nsym..(q as usize + 1) * self.nsym];
            for &r in row {
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    queue.push_back(r);
                }
            }
        }
        order
    }

    /// Keeps the reachable part, numbered in BFS order.
    fn renumber_reachable(&self) -> RawMachine {
        let order = self.bfs_order();
        let mut index = vec![u32::MAX; self.states()];
        for (i, &q) in order.iter().enumerate() {
            index[q as usize] = i as u32;
        }
        let mut delta = Vec::with_capacity(order.len() * self.nsym);
        let mut labels = Vec::with_capacity(order.len());
        for &q in &order {
            let row = &self.delta[q as usize * self.nsym..(q as usize + 1) * self.nsym];
            delta.extend(row.iter().map(|&r| index[r as usize]));
            labels.push(self.labels[q as usize]);
        }
        RawMachine { nsym: self.nsym, initial: 0, delta, labels }
    }

    /// Minimal machine with canonical numbering.
    pub fn minimize(&self) -> RawMachine {
        let reach = self.renumber_reachable();
        let class = coarsest_partition(reach.nsym, &reach.delta, &reach.labels);
        let blocks = class.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut delta = vec![0u32; blocks * reach.nsym];
        let mut labels = vec![0u32; blocks];
        let mut done = vec![false; blocks];
        for q in 0..reach.states() {
            let b = class[q] as usize;
            if done[b] {
                continue;
            }
            done[b] = true;
            labels[b] = reach.labels[q];
            for a in 0..reach.nsym {
                delta[b * reach.nsym + a] = class[reach.delta[q * reach.nsym + a] as usize];
            }
        }
        let quotient = RawMachine { nsym: reach.nsym, initial: class[reach.initial as usize], delta, labels };
        quotient.renumber_reachable()
    }
}

/// Coarsest partition compatible with `labels` and stable under `delta`.
/// Returns the block index of every state.
fn coarsest_partition(nsym: usize, delta: &[u32], labels: &[u32]) -> Vec<u32> {
    let n = labels.len();
    if n == 0 {
        return Vec::new();
    }

    // inverse transitions, grouped by (symbol, target)
    let mut inv_start = vec![0u32; nsym * n + 1];
    for q in 0..n {
        for a in 0..nsym {
            let t = delta[q * nsym + a] as usize;
            inv_start[a * n + t + 1] += 1;
        }
    }
    for i in 1..inv_start.len() {
        inv_start[i] += inv_start[i - 1];
    }
    let mut fill = inv_start.clone();
    let mut inv_src = vec![0u32; nsym * n];
    for q in 0..n {
        for a in 0..nsym {
            let key = a * n + delta[q * nsym + a] as usize;
            inv_src[fill[key] as usize] = q as u32;
            fill[key] += 1;
        }
    }
    drop(fill);

    let mut elems: Vec<u32> = (0..n as u32).collect();
    elems.sort_by_key(|&q| labels[q as usize]);
    let mut loc = vec![0u32; n];
    let mut blk = vec![0u32; n];
    let mut bstart = Vec::new();
    let mut bend = Vec::new();
    for (i, &q) in elems.iter().enumerate() {
        loc[q as usize] = i as u32;
        if i == 0 || labels[q as usize] != labels[elems[i - 1] as usize] {
            bstart.push(i as u32);
            bend.push(i as u32);
        }
        let b = bstart.len() - 1;
        blk[q as usize] = b as u32;
        bend[b] = i as u32 + 1;
    }
    let mut bmark = vec![0u32; bstart.len()];
    let mut in_work = vec![true; bstart.len()];
    let mut work: Vec<u32> = (0..bstart.len() as u32).collect();
    if let Some(largest) = (0..bstart.len()).max_by_key(|&b| bend[b] - bstart[b]) {
        in_work[largest] = false;
        work.retain(|&b| b as usize != largest);
    }

    let mut splitter = Vec::new();
    let mut touched = Vec::new();
    while let Some(b) = work.pop() {
        in_work[b as usize] = false;
        splitter.clear();
        splitter.extend_from_slice(&elems[bstart[b as usize] as usize..bend[b as usize] as usize]);
        for a in 0..nsym {
            for &q in &splitter {
                let key = a * n + q as usize;
                for &p in &inv_src[inv_start[key] as usize..inv_start[key + 1] as usize] {
                    let pb = blk[p as usize] as usize;
                    let pos = loc[p as usize];
                    let front = bstart[pb] + bmark[pb];
                    if pos < front {
                        continue; // already marked
                    }
                    if bmark[pb] == 0 {
                        touched.push(pb as u32);
                    }
                    let other = elems[front as usize];
                    elems.swap(pos as usize, front as usize);
                    loc[other as usize] = pos;
                    loc[p as usize] = front;
                    bmark[pb] += 1;
                }
            }
            for &y in &touched {
                let y = y as usize;
                let marked = bmark[y];
                bmark[y] = 0;
                let size = bend[y] - bstart[y];
                if marked == size {
                    continue;
                }
                let new = bstart.len();
                bstart.push(bstart[y]);
                bend.push(bstart[y] + marked);
                bmark.push(0);
                bstart[y] += marked;
                for i in bstart[new]..bend[new] {
                    blk[elems[i as usize] as usize] = new as u32;
                }
                if in_work[y] {
                    in_work.push(true);
                    work.push(new as u32);
                } else {
                    let smaller = if marked <= size - marked { new } else { y };
                    if smaller == new {
                        in_work.push(true);
                    } else {
                        in_work.push(false);
                        in_work[y] = true;
                    }
                    work.push(smaller as u32);
                }
            }
            touched.clear();
        }
    }
    blk
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_classes(m: &RawMachine) -> usize {
        // Moore refinement until stable, an independent route
        let n = m.labels.len();
        let mut class: Vec<u32> = m.labels.clone();
        loop {
            let mut sigs: Vec<(u32, Vec<u32>)> = (0..n)
                .map(|q| {
                    let row = (0..m.nsym).map(|a| class[m.delta[q * m.nsym + a] as usize]).collect();
                    (class[q], row)
                })
                .collect();
            let mut uniq = sigs.clone();
            uniq.sort();
            uniq.dedup();
            let next: Vec<u32> = sigs.drain(..).map(|s| uniq.binary_search(&s).unwrap() as u32).collect();
            let before = {
                let mut c = class.clone();
                c.sort();
                c.dedup();
                c.len()
            };
            if uniq.len() == before {
                return uniq.len();
            }
            class = next;
        }
    }

    #[test]
    fn matches_moore_refinement_on_pseudo_random_machines() {
        let mut seed = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..300 {
            let n = 1 + (next() % 25) as usize;
            let nsym = 1 + (next() % 4) as usize;
            let delta = (0..n * nsym).map(|_| (next() % n as u64) as u32).collect();
            let labels = (0..n).map(|_| (next() % 3) as u32).collect();
            let m = RawMachine { nsym, initial: 0, delta, labels };
            let reach = m.renumber_reachable();
            let min = m.minimize();
            assert_eq!(min.labels.len(), brute_force_classes(&reach));
            assert_eq!(min.minimize().delta, min.delta);
        }
    }
}
