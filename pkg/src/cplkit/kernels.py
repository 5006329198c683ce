"""Numeric kernels: accessibility closure and ground-rule saturation.

Every kernel exists twice, a numba ``@njit`` loop and a vectorised numpy
version.  The module-level dispatchers pick one according to
``cplkit._accel.USE_NUMBA``; both are importable directly for testing and
benchmarking.

Ground rules are stored in CSR form::

    head[r]                          atom index derived by rule r
    pos_idx[pos_ptr[r]:pos_ptr[r+1]] positive body atoms of rule r
    neg_idx[neg_ptr[r]:neg_ptr[r+1]] negated body atoms of rule r

A database is a boolean vector over atom indices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import USE_NUMBA, njit


# -- closure ------------------------------------------------------------------

@njit
def closure_numba(adj):
    n = adj.shape[0]
    out = adj.copy()
    for k in range(n):
        for i in range(n):
            if out[i, k]:
                for j in range(n):
                    if out[k, j]:
                        out[i, j] = True
    return out


def closure_numpy(adj):
    out = np.array(adj, dtype=np.bool_, copy=True)
    for k in range(out.shape[0]):
        out |= np.outer(out[:, k], out[k, :])
    return out


def transitive_closure(adj, use_numba: bool | None = None) -> np.ndarray:
    """Transitive (not reflexive) closure of a boolean adjacency matrix."""
    adj = np.ascontiguousarray(adj, dtype=np.bool_)
    if use_numba is None:
        use_numba = USE_NUMBA
    if adj.shape[0] == 0:
        return adj.copy()
    return closure_numba(adj) if use_numba else closure_numpy(adj)


# -- ground rules -------------------------------------------------------------

@dataclass(frozen=True)
class CompiledRules:
    n_atoms: int
    head: np.ndarray
    pos_ptr: np.ndarray
    pos_idx: np.ndarray
    neg_ptr: np.ndarray
    neg_idx: np.ndarray
    # rule index of every positive / negative literal (numpy path)
    pos_rule: np.ndarray
    neg_rule: np.ndarray
    # atom -> rules with that atom in the positive body (semi-naive path)
    occ_ptr: np.ndarray
    occ_idx: np.ndarray

    @property
    def n_rules(self) -> int:
        return int(self.head.shape[0])


def compile_rules(n_atoms: int, rules) -> CompiledRules:
    """``rules`` is an iterable of ``(head, positive_atoms, negative_atoms)`` index triples."""
    heads, pos_ptr, neg_ptr, pos_idx, neg_idx = [], [0], [0], [], []
    for head, pos, neg in rules:
        heads.append(head)
        pos_idx.extend(pos)
        neg_idx.extend(neg)
        pos_ptr.append(len(pos_idx))
        neg_ptr.append(len(neg_idx))
    i32 = np.int32
    head_a = np.asarray(heads, dtype=i32)
    pos_ptr_a = np.asarray(pos_ptr, dtype=i32)
    neg_ptr_a = np.asarray(neg_ptr, dtype=i32)
    pos_idx_a = np.asarray(pos_idx, dtype=i32)
    neg_idx_a = np.asarray(neg_idx, dtype=i32)
    n_rules = len(heads)
    pos_rule = np.repeat(np.arange(n_rules, dtype=i32), np.diff(pos_ptr_a))
    neg_rule = np.repeat(np.arange(n_rules, dtype=i32), np.diff(neg_ptr_a))
    order = np.argsort(pos_idx_a, kind="stable")
    occ_idx = pos_rule[order].astype(i32)
    counts = np.bincount(pos_idx_a, minlength=n_atoms) if n_atoms else np.zeros(0, dtype=np.int64)
    occ_ptr = np.zeros(n_atoms + 1, dtype=i32)
    if n_atoms:
        occ_ptr[1:] = np.cumsum(counts)
    return CompiledRules(n_atoms, head_a, pos_ptr_a, pos_idx_a, neg_ptr_a, neg_idx_a,
                         pos_rule, neg_rule, occ_ptr, occ_idx)


@njit
def _step_numba(head, pos_ptr, pos_idx, neg_ptr, neg_idx, db, active):
    new = np.zeros(db.shape[0], dtype=np.bool_)
    for r in range(head.shape[0]):
        if not active[r]:
            continue
        h = head[r]
        if db[h] or new[h]:
            continue
        ok = True
        for k in range(pos_ptr[r], pos_ptr[r + 1]):
            if not db[pos_idx[k]]:
                ok = False
                break
        if ok:
            for k in range(neg_ptr[r], neg_ptr[r + 1]):
                if db[neg_idx[k]]:
                    ok = False
                    break
        if ok:
            new[h] = True
    return new


@njit
def _fixpoint_numba(head, pos_ptr, pos_idx, neg_ptr, neg_idx, occ_ptr, occ_idx,
                    db, added_round, semi_naive):
    n_rules = head.shape[0]
    active = np.ones(n_rules, dtype=np.bool_)
    rounds = 0
    while True:
        new = _step_numba(head, pos_ptr, pos_idx, neg_ptr, neg_idx, db, active)
        rounds += 1
        any_new = False
        for a in range(db.shape[0]):
            if new[a]:
                any_new = True
                db[a] = True
                added_round[a] = rounds
        if not any_new:
            return rounds - 1
        if semi_naive:
            active[:] = False
            for a in range(db.shape[0]):
                if new[a]:
                    for k in range(occ_ptr[a], occ_ptr[a + 1]):
                        active[occ_idx[k]] = True


def _step_numpy(rules: CompiledRules, db, active):
    n = rules.n_rules
    if n == 0:
        return np.zeros_like(db)
    pos_len = np.diff(rules.pos_ptr)
    pos_hits = np.bincount(rules.pos_rule, weights=db[rules.pos_idx], minlength=n)
    neg_hits = np.bincount(rules.neg_rule, weights=db[rules.neg_idx], minlength=n)
    fire = active & (pos_hits == pos_len) & (neg_hits == 0) & ~db[rules.head]
    new = np.zeros_like(db)
    new[rules.head[fire]] = True
    return new


def _fixpoint_numpy(rules: CompiledRules, db, added_round, semi_naive):
    active = np.ones(rules.n_rules, dtype=np.bool_)
    rounds = 0
    while True:
        new = _step_numpy(rules, db, active)
        rounds += 1
        if not new.any():
            return rounds - 1
        db |= new
        added_round[new] = rounds
        if semi_naive:
            active = np.bincount(rules.pos_rule, weights=new[rules.pos_idx],
                                 minlength=rules.n_rules) > 0


def immediate_step(rules: CompiledRules, db, use_numba: bool | None = None) -> np.ndarray:
    """Atoms derivable by one application of every rule and not yet in ``db``."""
    db = np.ascontiguousarray(db, dtype=np.bool_)
    if use_numba is None:
        use_numba = USE_NUMBA
    active = np.ones(rules.n_rules, dtype=np.bool_)
    if use_numba:
        return _step_numba(rules.head, rules.pos_ptr, rules.pos_idx,
                           rules.neg_ptr, rules.neg_idx, db, active)
    return _step_numpy(rules, db, active)


def fixpoint(rules: CompiledRules, db, semi_naive: bool = False,
             use_numba: bool | None = None):
    """Iterate ``immediate_step`` to saturation.

    Returns ``(db, added_round, rounds)``; ``added_round[a]`` is the 1-based
    round in which atom ``a`` was first derived (0 for atoms already present).
    """
    db = np.array(db, dtype=np.bool_, copy=True)
    added_round = np.zeros(db.shape[0], dtype=np.int32)
    if use_numba is None:
        use_numba = USE_NUMBA
    if rules.n_rules == 0:
        return db, added_round, 0
    if use_numba:
        rounds = _fixpoint_numba(rules.head, rules.pos_ptr, rules.pos_idx,
                                 rules.neg_ptr, rules.neg_idx, rules.occ_ptr,
                                 rules.occ_idx, db, added_round, semi_naive)
    else:
        rounds = _fixpoint_numpy(rules, db, added_round, semi_naive)
    return db, added_round, int(rounds)
