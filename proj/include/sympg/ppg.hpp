#pragma once

// Parameterised parity games: PBESs in which every right-hand side is a pure
// conjunction or disjunction of atoms. An atom is an optionally quantified,
// optionally guarded predicate-variable call, or a simple formula. Mixed
// right-hand sides are normalised by hoisting the offending subformula into a
// fresh equation with the same fixpoint that immediately follows its parent.
// Priorities follow the usual alternation ranks: the first equation gets 0
// for nu (1 for mu), and the rank increases whenever the fixpoint changes.

#include <deque>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <sympg/pbes.hpp>

namespace sympg {

struct PpgAtom {
    std::vector<Param> qvars;  // forall in conjunctive, exists in disjunctive equations
    ExprPtr guard;             // null means true
    bool has_call = false;
    std::string call;
    std::vector<ExprPtr> args;
    ExprPtr simple;            // set iff !has_call

    // conjunctive: forall qvars. guard => core; disjunctive: exists qvars. guard && core
};

struct PpgEquation {
    FixOp sigma;
    std::string name;
    std::vector<Param> params;
    bool conjunctive = true;
    std::vector<PpgAtom> atoms;
    int priority = 0;
};

struct Ppg {
    std::shared_ptr<SortTable> sorts;
    std::vector<PpgEquation> equations;
    std::string init_var;
    std::vector<ExprPtr> init_args;

    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }
    void rebuild_index() {
        index_.clear();
        for (size_t i = 0; i < equations.size(); ++i) index_[equations[i].name] = int(i);
    }

private:
    std::unordered_map<std::string, int> index_;
};

namespace detail {

// Negation normal form: negations pushed onto simple formulae, implications
// with non-simple antecedents expanded. A predicate variable in negative
// position is a monotonicity violation.
inline PredPtr pf_nnf(const PredPtr& f, bool positive) {
    switch (f->kind) {
        case PredForm::Simple:
            return positive ? f : pf_simple(mk_not(f->simple));
        case PredForm::Call:
            if (!positive)
                throw spec_error("non-monotone system: negative occurrence of '" + f->var + "'");
            return f;
        case PredForm::Neg:
            return pf_nnf(f->a, !positive);
        case PredForm::And:
        case PredForm::Or: {
            auto kind = f->kind;
            if (!positive) kind = kind == PredForm::And ? PredForm::Or : PredForm::And;
            return pf_bin(kind, pf_nnf(f->a, positive), pf_nnf(f->b, positive));
        }
        case PredForm::Imp: {
            if (positive) {
                if (f->a->kind == PredForm::Simple)
                    return pf_bin(PredForm::Imp, f->a, pf_nnf(f->b, true));
                return pf_bin(PredForm::Or, pf_nnf(f->a, false), pf_nnf(f->b, true));
            }
            return pf_bin(PredForm::And, pf_nnf(f->a, true), pf_nnf(f->b, false));
        }
        case PredForm::Forall:
        case PredForm::Exists: {
            auto kind = f->kind;
            if (!positive) kind = kind == PredForm::Forall ? PredForm::Exists : PredForm::Forall;
            return pf_quant(kind, f->qvars, pf_nnf(f->a, positive));
        }
    }
    return f;
}

inline bool pf_leans_disjunctive(const PredPtr& f) {
    switch (f->kind) {
        case PredForm::Or:
        case PredForm::Exists: return true;
        case PredForm::Imp: return pf_leans_disjunctive(f->b);
        default: return false;
    }
}

}  // namespace detail

class PpgNormalizer {
public:
    static Ppg run(const Pbes& p) {
        PpgNormalizer n(p);
        return n.normalize();
    }

private:
    explicit PpgNormalizer(const Pbes& p) : src_(p) {
        for (const auto& eq : p.equations) used_names_.insert(eq.name);
    }

    const Pbes& src_;
    std::unordered_set<std::string> used_names_;
    std::unordered_map<std::string, int> hoist_counter_;

    Ppg normalize() {
        auto diags = check_wellformed(src_);
        if (!diags.empty()) throw spec_error("ill-formed PBES: " + diags[0]);

        Ppg out;
        out.sorts = src_.sorts;
        out.init_var = src_.init_var;
        out.init_args = src_.init_args;

        std::deque<Equation> work(src_.equations.begin(), src_.equations.end());
        while (!work.empty()) {
            Equation eq = std::move(work.front());
            work.pop_front();
            std::vector<Equation> hoisted;
            out.equations.push_back(atomize(eq, hoisted));
            // hoisted equations go right after their parent
            for (size_t i = hoisted.size(); i-- > 0;) work.push_front(std::move(hoisted[i]));
        }
        out.rebuild_index();
        return out;
    }

    PpgEquation atomize(const Equation& eq, std::vector<Equation>& hoisted) {
        PpgEquation out;
        out.sigma = eq.sigma;
        out.name = eq.name;
        out.params = eq.params;
        PredPtr rhs = detail::pf_nnf(eq.rhs, true);
        out.conjunctive = !detail::pf_leans_disjunctive(rhs);
        collect(out, rhs, nullptr, {}, hoisted);
        return out;
    }

    void collect(PpgEquation& eq, const PredPtr& f, ExprPtr guard, std::vector<Param> qvars,
                 std::vector<Equation>& hoisted) {
        bool conj = eq.conjunctive;
        switch (f->kind) {
            case PredForm::And:
                if (conj) {
                    collect(eq, f->a, guard, qvars, hoisted);
                    collect(eq, f->b, guard, qvars, hoisted);
                    return;
                }
                flatten_atom(eq, f, guard, qvars, hoisted);
                return;
            case PredForm::Or:
                if (!conj) {
                    collect(eq, f->a, guard, qvars, hoisted);
                    collect(eq, f->b, guard, qvars, hoisted);
                    return;
                }
                flatten_atom(eq, f, guard, qvars, hoisted);
                return;
            case PredForm::Imp:
                // antecedent is simple after NNF
                if (conj) {
                    collect(eq, f->b, and_guard(guard, f->a->simple), qvars, hoisted);
                } else {
                    // b => g reads as !b || g in a disjunctive equation
                    push_atom(eq, qvars, guard, nullptr, {}, mk_not(f->a->simple));
                    collect(eq, f->b, guard, qvars, hoisted);
                }
                return;
            case PredForm::Forall:
            case PredForm::Exists: {
                bool matches = (f->kind == PredForm::Forall) == conj;
                if (matches) {
                    auto qs = qvars;
                    qs.insert(qs.end(), f->qvars.begin(), f->qvars.end());
                    collect(eq, f->a, guard, std::move(qs), hoisted);
                    return;
                }
                hoist(eq, f, guard, qvars, hoisted);
                return;
            }
            case PredForm::Call:
                push_atom(eq, qvars, guard, f, f->args, nullptr);
                return;
            case PredForm::Simple:
                push_atom(eq, qvars, guard, nullptr, {}, f->simple);
                return;
            case PredForm::Neg:
                throw spec_error("unexpected negation after normalisation");
        }
    }

    // And/Or of simples with at most one call can stay a single atom; anything
    // richer becomes a fresh equation of the opposite kind.
    void flatten_atom(PpgEquation& eq, const PredPtr& f, ExprPtr guard, std::vector<Param>& qvars,
                      std::vector<Equation>& hoisted) {
        bool inner_conj = f->kind == PredForm::And;
        std::vector<PredPtr> parts;
        flatten(f, f->kind, parts);
        std::vector<ExprPtr> simples;
        const PredForm* call = nullptr;
        bool ok = true;
        for (const auto& p : parts) {
            if (p->kind == PredForm::Simple) simples.push_back(p->simple);
            else if (p->kind == PredForm::Call && !call) call = p.get();
            else { ok = false; break; }
        }
        if (ok && call) {
            // inner conjunction in a disjunctive equation: guard && call
            // inner disjunction in a conjunctive equation: !simples => call
            ExprPtr cond = nullptr;
            for (const auto& s : simples) cond = cond ? (inner_conj ? mk_and(cond, s) : mk_or(cond, s)) : s;
            ExprPtr atom_guard = guard;
            if (cond) atom_guard = and_guard(atom_guard, inner_conj ? cond : mk_not(cond));
            push_atom(eq, qvars, atom_guard, nullptr, call->args, nullptr, call->var);
            return;
        }
        if (ok && !call) {
            ExprPtr cond = nullptr;
            for (const auto& s : simples) cond = cond ? (inner_conj ? mk_and(cond, s) : mk_or(cond, s)) : s;
            push_atom(eq, qvars, guard, nullptr, {}, cond ? cond : mk_true());
            return;
        }
        hoist(eq, f, guard, qvars, hoisted);
        return;
    }

    static void flatten(const PredPtr& f, PredForm::Kind kind, std::vector<PredPtr>& out) {
        if (f->kind == kind) {
            flatten(f->a, kind, out);
            flatten(f->b, kind, out);
        } else {
            out.push_back(f);
        }
    }

    void hoist(PpgEquation& eq, const PredPtr& f, ExprPtr guard, std::vector<Param>& qvars,
               std::vector<Equation>& hoisted) {
        std::string name = eq.name + std::to_string(++hoist_counter_[eq.name]);
        while (!used_names_.insert(name).second) name += "'";
        std::vector<Param> params = eq.params;
        params.insert(params.end(), qvars.begin(), qvars.end());
        hoisted.push_back(Equation{eq.sigma, name, params, f});
        std::vector<ExprPtr> args;
        for (const auto& p : params) args.push_back(mk_var(p.name, ExType::ref(p.sort)));
        push_atom(eq, qvars, guard, nullptr, std::move(args), nullptr, name);
    }

    static ExprPtr and_guard(const ExprPtr& guard, const ExprPtr& extra) {
        return guard ? mk_and(guard, extra) : extra;
    }

    void push_atom(PpgEquation& eq, const std::vector<Param>& qvars, ExprPtr guard,
                   const PredPtr& callform, std::vector<ExprPtr> args, ExprPtr simple,
                   std::string call_name = "") {
        PpgAtom a;
        a.qvars = qvars;
        a.guard = guard && is_const_bool(guard, true) ? nullptr : guard;
        if (callform || !call_name.empty()) {
            a.has_call = true;
            a.call = callform ? callform->var : call_name;
            a.args = callform ? callform->args : std::move(args);
        } else {
            a.simple = simple ? simple : mk_true();
        }
        eq.atoms.push_back(std::move(a));
    }
};

inline Ppg normalize_ppg(const Pbes& p) { return PpgNormalizer::run(p); }

// Alternation ranks: non-decreasing down the list, parity matches the
// equation's own fixpoint.
inline void assign_priorities(Ppg& p) {
    int rank = 0;
    for (size_t i = 0; i < p.equations.size(); ++i) {
        auto& eq = p.equations[i];
        if (i == 0) rank = eq.sigma == FixOp::Nu ? 0 : 1;
        else if (eq.sigma != p.equations[i - 1].sigma) ++rank;
        eq.priority = rank;
    }
}

// --- back-conversion and printing (used by tests and the explicit oracle) ------

inline PredPtr atom_to_pred(const PpgAtom& a, bool conjunctive) {
    PredPtr core;
    if (a.has_call) core = pf_call(a.call, a.args);
    else core = pf_simple(a.simple);
    if (a.guard) {
        if (conjunctive) core = pf_bin(PredForm::Imp, pf_simple(a.guard), core);
        else core = pf_bin(PredForm::And, pf_simple(a.guard), core);
    }
    return pf_quant(conjunctive ? PredForm::Forall : PredForm::Exists, a.qvars, core);
}

inline Pbes ppg_to_pbes(const Ppg& p) {
    Pbes out;
    out.sorts = p.sorts;
    out.init_var = p.init_var;
    out.init_args = p.init_args;
    for (const auto& eq : p.equations) {
        PredPtr rhs;
        for (const auto& a : eq.atoms) {
            PredPtr one = atom_to_pred(a, eq.conjunctive);
            rhs = rhs ? pf_bin(eq.conjunctive ? PredForm::And : PredForm::Or, rhs, one) : one;
        }
        if (!rhs) rhs = eq.conjunctive ? pf_true() : pf_false();
        out.equations.push_back(Equation{eq.sigma, eq.name, eq.params, rhs});
    }
    return out;
}

inline std::string print_ppg(const Ppg& p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.equations.size(); ++i) {
        const auto& eq = p.equations[i];
        os << (i == 0 ? "ppg  " : "     ");
        os << (eq.sigma == FixOp::Mu ? "mu " : "nu ") << eq.name << "(";
        print_params(os, eq.params, *p.sorts);
        os << ")[" << eq.priority << (eq.conjunctive ? ",and" : ",or") << "] = ";
        for (size_t k = 0; k < eq.atoms.size(); ++k) {
            if (k) os << (eq.conjunctive ? " && " : " || ");
            print_pred(os, *atom_to_pred(eq.atoms[k], eq.conjunctive), *p.sorts,
                       eq.atoms.size() > 1 ? 3 : 0);
        }
        if (eq.atoms.empty()) os << (eq.conjunctive ? "true" : "false");
        os << ";\n";
    }
    os << "init " << p.init_var << "(";
    for (size_t i = 0; i < p.init_args.size(); ++i) {
        if (i) os << ", ";
        print_expr(os, *p.init_args[i], *p.sorts);
    }
    os << ");\n";
    return os.str();
}

}  // namespace sympg
