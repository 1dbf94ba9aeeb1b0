"""Semi-automatic traffic-model learning and empirical error evaluation.

A hand-written DFA skeleton captures the high-level structure of the
traffic; feeding it a corpus and counting how often every state is reached,
every transition taken, and every word ends in a state turns the skeleton
into a PA in the obvious way.  Unobserved transitions get probability 0 and
vanish from the support; no smoothing is applied, that is a modelling
choice left to the caller.
"""

from dataclasses import dataclass, field

from .nfa import Nfa, accepts
from .pa import Pa


@dataclass
class CountTable:
    """Event counts gathered while running a corpus through a skeleton."""

    visit: dict = field(default_factory=dict)
    trans_count: dict = field(default_factory=dict)  # (state, symbol) -> count
    end_count: dict = field(default_factory=dict)

    def merge(self, other):
        """Fold another table in; counting commutes, so corpora may be
        sharded and merged in any order."""
        for q, c in other.visit.items():
            self.visit[q] = self.visit.get(q, 0) + c
        for k, c in other.trans_count.items():
            self.trans_count[k] = self.trans_count.get(k, 0) + c
        for q, c in other.end_count.items():
            self.end_count[q] = self.end_count.get(q, 0) + c


def _check_skeleton(skeleton, complete=True):
    if len(skeleton.initial) != 1:
        raise ValueError("skeleton must have exactly one initial state")
    for q in range(skeleton.num_states):
        for sym in skeleton.alphabet:
            succ = skeleton.succ(q, sym)
            if len(succ) > 1:
                raise ValueError(
                    f"skeleton is nondeterministic at state {q}, {sym!r}")
            if complete and not succ:
                raise ValueError(
                    f"skeleton is incomplete: state {q} has no {sym!r} "
                    "transition (see complete_dfa)")


def count_events(skeleton, corpus):
    """Run every corpus word through the skeleton, counting state visits,
    transition uses and word endings."""
    _check_skeleton(skeleton)
    (init,) = skeleton.initial
    table = CountTable()
    n_words = 0
    for word in corpus:
        n_words += 1
        q = init
        table.visit[q] = table.visit.get(q, 0) + 1
        for sym in word:
            succ = skeleton.succ(q, sym)
            if not succ:
                raise ValueError(f"symbol {sym!r} not in skeleton alphabet")
            key = (q, sym)
            table.trans_count[key] = table.trans_count.get(key, 0) + 1
            q = succ[0]
            table.visit[q] = table.visit.get(q, 0) + 1
        table.end_count[q] = table.end_count.get(q, 0) + 1
    if n_words == 0:
        raise ValueError("corpus is empty")
    return table


def learn_pa(skeleton, corpus, name=None):
    """Estimate a PA from a complete DFA skeleton and a corpus.

    Each state's outgoing probabilities are its event frequencies: a word of
    length k contributes k transition events and one end event.  States the
    corpus never visits are dropped.  The result always satisfies the PA
    stochasticity conditions because every state keeps its own denominator.
    """
    table = count_events(skeleton, corpus)
    n = skeleton.num_states
    totals = [0] * n
    for (q, _sym), c in table.trans_count.items():
        totals[q] += c
    for q, c in table.end_count.items():
        totals[q] += c

    (init,) = skeleton.initial
    initial = [0.0] * n
    initial[init] = 1.0
    final = [0.0] * n
    transitions = []
    for q in range(n):
        if totals[q] == 0:
            continue
        t = totals[q]
        final[q] = table.end_count.get(q, 0) / t
        for sym in skeleton.alphabet:
            c = table.trans_count.get((q, sym), 0)
            if c:
                transitions.append((q, sym, skeleton.succ(q, sym)[0], c / t))
    pa = Pa(skeleton.alphabet, initial, final, transitions, name=name)
    if pa.num_states != sum(1 for t in totals if t):
        raise RuntimeError("learned model kept a state without events "
                           "(internal error)")
    return pa


def complete_dfa(skeleton):
    """Make a DFA complete by adding one non-final sink with self-loops and
    routing every missing transition to it.  A complete input is returned
    unchanged; the skeleton is never modified silently elsewhere."""
    _check_skeleton(skeleton, complete=False)
    missing = [(q, sym) for q in range(skeleton.num_states)
               for sym in skeleton.alphabet if not skeleton.succ(q, sym)]
    if not missing:
        return skeleton
    sink = skeleton.num_states
    transitions = list(skeleton.transitions())
    transitions += [(q, sym, sink) for q, sym in missing]
    transitions += [(sink, sym, sink) for sym in skeleton.alphabet]
    return Nfa(sink + 1, skeleton.alphabet, transitions,
               initial=skeleton.initial, final=skeleton.final,
               name=skeleton.name)


def traffic_error(a, a_reduced, sample):
    """Fraction of sample words classified differently by the two automata.

    Returns (mismatches, total, ratio); duplicates count with multiplicity.
    """
    if set(a.alphabet) != set(a_reduced.alphabet):
        raise ValueError("automata alphabets differ")
    mismatches = 0
    total = 0
    for word in sample:
        total += 1
        if accepts(a, word) != accepts(a_reduced, word):
            mismatches += 1
    if total == 0:
        raise ValueError("sample is empty")
    return mismatches, total, mismatches / total
