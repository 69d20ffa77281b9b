from collections import defaultdict

EMPTY = frozenset()


class FactIndex(object):
    """Ground facts by predicate and arity, plus lookup tables on the values at bound positions.

    A table for ``(pred, arity, positions)`` is built the first time a lookup
    binds exactly those positions and is kept current by :meth:`add`.
    """

    def __init__(self, facts=()):
        self.facts = set()
        self.by_pred = defaultdict(set)
        self.tables = {}
        self.layouts = defaultdict(list)
        self.update(facts)

    def add(self, fact):
        if fact in self.facts:
            return False
        self.facts.add(fact)
        args = fact.args
        sig = (fact.pred, len(args))
        self.by_pred[sig].add(fact)
        for positions in self.layouts.get(sig, ()):
            key = tuple(args[i] for i in positions)
            self.tables[sig + (positions,)].setdefault(key, set()).add(fact)
        return True

    def update(self, facts):
        return sum(self.add(fact) for fact in facts)

    def _table(self, sig, positions):
        table = self.tables.get(sig + (positions,))
        if table is None:
            table = {}
            for fact in self.by_pred.get(sig, EMPTY):
                table.setdefault(tuple(fact.args[i] for i in positions), set()).add(fact)
            self.tables[sig + (positions,)] = table
            self.layouts[sig].append(positions)
        return table

    def lookup(self, pred, arity, positions, values):
        """Facts of ``pred``/``arity`` carrying ``values`` at ``positions``."""
        sig = (pred, arity)
        if not positions:
            return self.by_pred.get(sig, EMPTY)
        if sig not in self.by_pred:
            return EMPTY
        return self._table(sig, positions).get(values, EMPTY)

    def candidates(self, atom, binding):
        """Facts of the atom's arity that agree with it on every constant and every variable bound by ``binding``."""
        positions, values = [], []
        for pos, term in enumerate(atom.args):
            if term.is_variable:
                term = binding.get(term)
                if term is None:
                    continue
            positions.append(pos)
            values.append(term)
        return self.lookup(atom.pred, len(atom.args), tuple(positions), tuple(values))

    def __contains__(self, fact):
        return fact in self.facts

    def __iter__(self):
        return iter(self.facts)

    def __len__(self):
        return len(self.facts)
