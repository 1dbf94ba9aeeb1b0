"""Probabilistic word models: PA and PPA representation plus the
length-exponential reference model.

A probabilistic automaton (PA) assigns a word ``w = a1..ak`` the probability
``initial . T_a1 ... T_ak . final`` and, when its two stochasticity
conditions hold, defines a distribution over all words.  A
pseudo-probabilistic automaton (PPA) has the same shape with no
stochasticity demands; products of a PA with an NFA are generally only PPAs.

Transition matrices are stored sparsely, as per-symbol adjacency with
weights: learned traffic models touch only a tiny fraction of state pairs.
"""

from .nfa import Nfa, trim_survivors

STOCHASTIC_TOL = 1e-9


class Ppa:
    """Pseudo-probabilistic automaton: nonnegative weights, no constraints."""

    __slots__ = ("num_states", "alphabet", "initial", "final", "name",
                 "_trans", "_sym_index")

    def __init__(self, alphabet, initial, final, transitions=(), name=None):
        """``transitions`` is an iterable of (src, symbol, dst, weight)
        quadruples; zero weights are dropped, negative ones rejected."""
        alphabet = tuple(alphabet)
        if not alphabet:
            raise ValueError("alphabet must be non-empty")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("alphabet contains duplicate symbols")
        initial = tuple(float(x) for x in initial)
        final = tuple(float(x) for x in final)
        if len(initial) != len(final):
            raise ValueError("initial and final weight vectors differ in length")
        if any(x < 0.0 for x in initial) or any(x < 0.0 for x in final):
            raise ValueError("weights must be nonnegative")

        self.alphabet = alphabet
        self._sym_index = {s: i for i, s in enumerate(alphabet)}
        self.num_states = len(initial)
        self.initial = initial
        self.final = final
        self.name = name

        trans = {}
        for src, sym, dst, w in transitions:
            if sym not in self._sym_index:
                raise ValueError(f"transition symbol {sym!r} not in alphabet")
            if not (0 <= src < self.num_states and 0 <= dst < self.num_states):
                raise ValueError(f"transition state out of range: {(src, dst)}")
            w = float(w)
            if w < 0.0:
                raise ValueError("transition weights must be nonnegative")
            if w == 0.0:
                continue
            trans.setdefault(sym, {}).setdefault(src, {})[dst] = w
        # re-key rows/columns in ascending order so iteration is reproducible
        self._trans = {
            sym: {src: dict(sorted(rows[src].items()))
                  for src in sorted(rows)}
            for sym, rows in sorted(trans.items(),
                                    key=lambda kv: self._sym_index[kv[0]])
        }

    def row(self, sym, src):
        """Sparse transition row for (src, sym) as a dst -> weight dict."""
        return self._trans.get(sym, {}).get(src, {})

    def entries(self):
        """Yield (src, sym, dst, weight) in (src, alphabet, dst) order."""
        for src in range(self.num_states):
            for sym in self.alphabet:
                for dst, w in self.row(sym, src).items():
                    yield src, sym, dst, w

    def out_mass(self, src):
        """Total outgoing transition weight of ``src`` over all symbols."""
        return sum(w for sym in self.alphabet
                   for w in self.row(sym, src).values())

    def __len__(self):
        return self.num_states

    def __repr__(self):
        kind = type(self).__name__
        return (f"{kind}(states={self.num_states}, "
                f"symbols={len(self.alphabet)})")


class Pa(Ppa):
    """Probabilistic automaton.

    Construction compacts the automaton to its trimmed support (states on a
    path from a positive-initial to a positive-final state) and renormalizes
    nothing: if trimming removes probability mass, validation reports the
    broken stochasticity condition rather than hiding a modelling error.
    """

    def __init__(self, alphabet, initial, final, transitions=(), name=None):
        super().__init__(alphabet, initial, final, transitions, name)
        surv = trim_survivors(support(self))
        if len(surv) != self.num_states:
            kept = sorted(surv)
            pos = {old: new for new, old in enumerate(kept)}
            trans = [(pos[s], sym, pos[d], w)
                     for s, sym, d, w in self.entries()
                     if s in pos and d in pos]
            super().__init__(alphabet,
                             [self.initial[q] for q in kept],
                             [self.final[q] for q in kept],
                             trans, name)


def support(p):
    """NFA of the strictly positive weights of a PA/PPA."""
    transitions = [(src, sym, dst) for src, sym, dst, w in p.entries() if w > 0.0]
    return Nfa(p.num_states, p.alphabet, transitions,
               initial=[i for i, x in enumerate(p.initial) if x > 0.0],
               final=[i for i, x in enumerate(p.final) if x > 0.0],
               name=p.name)


def validate_pa(p, tol=STOCHASTIC_TOL):
    """Diagnostics for the PA conditions; an empty list means valid.

    Checks that the initial weights sum to 1, that accepting or leaving
    each state has total probability 1, that all entries lie in [0, 1],
    and that the support is trim.
    """
    diags = []
    total = sum(p.initial)
    if abs(total - 1.0) > tol:
        diags.append(f"initial weights sum to {total!r}, expected 1")
    for i, x in enumerate(p.initial):
        if x < -tol or x > 1.0 + tol:
            diags.append(f"initial weight of state {i} outside [0, 1]: {x!r}")
    for i, x in enumerate(p.final):
        if x < -tol or x > 1.0 + tol:
            diags.append(f"final weight of state {i} outside [0, 1]: {x!r}")
    for src, sym, dst, w in p.entries():
        if w < -tol or w > 1.0 + tol:
            diags.append(
                f"transition {src} -{sym!r}-> {dst} outside [0, 1]: {w!r}")
    for i in range(p.num_states):
        out = p.out_mass(i) + p.final[i]
        if abs(out - 1.0) > tol:
            diags.append(
                f"state {i}: accept-or-leave mass is {out!r}, expected 1")
    if len(trim_survivors(support(p))) != p.num_states:
        diags.append("support is not trim")
    return diags


def _propagate(p, word):
    """Row vector ``initial . T_w`` as a list of floats."""
    vec = list(p.initial)
    for sym in word:
        if sym not in p._sym_index:
            raise ValueError(f"symbol {sym!r} not in alphabet")
        nxt = [0.0] * p.num_states
        rows = p._trans.get(sym, {})
        for i, v in enumerate(vec):
            if v:
                for j, w in rows.get(i, {}).items():
                    nxt[j] += v * w
        vec = nxt
    return vec


def word_prob(p, word):
    """Probability of ``word``: initial . T_w . final."""
    vec = _propagate(p, word)
    return sum(v * f for v, f in zip(vec, p.final))


def word_weight(p, word):
    """Weight of ``word``: like word_prob but with final weights replaced by
    all-ones, i.e. the mass still alive after reading the word."""
    return sum(_propagate(p, word))


def make_p_exp(alphabet):
    """One-state PA giving every word w probability mu^(len(w)+1) with
    mu = 1 / (len(alphabet) + 1); an exponential distribution in the length
    that assigns every word a nonzero probability."""
    alphabet = tuple(alphabet)
    if not alphabet:
        raise ValueError("alphabet must be non-empty")
    mu = 1.0 / (len(alphabet) + 1)
    transitions = [(0, sym, 0, mu) for sym in alphabet]
    return Pa(alphabet, [1.0], [mu], transitions, name="p_exp")
