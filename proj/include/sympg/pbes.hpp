#pragma once

// Parameterised boolean equation systems: predicate formulae, ordered
// fixpoint equations, well-formedness checks and a pretty printer.

#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <sympg/process.hpp>

namespace sympg {

struct PredForm;
using PredPtr = std::shared_ptr<const PredForm>;

struct PredForm {
    enum Kind { Simple, Call, Neg, And, Or, Imp, Forall, Exists } kind;
    ExprPtr simple;               // Simple
    std::string var;              // Call
    std::vector<ExprPtr> args;    // Call
    PredPtr a, b;                 // Neg (a), binary (a,b), quantifier body (a)
    std::vector<Param> qvars;     // Forall/Exists
};

inline PredPtr pf_simple(ExprPtr e) {
    auto f = std::make_shared<PredForm>();
    f->kind = PredForm::Simple;
    f->simple = std::move(e);
    return f;
}

inline PredPtr pf_true() { return pf_simple(mk_true()); }
inline PredPtr pf_false() { return pf_simple(mk_false()); }

inline bool pf_is_const(const PredPtr& f, bool b) {
    return f->kind == PredForm::Simple && is_const_bool(f->simple, b);
}

inline PredPtr pf_call(std::string var, std::vector<ExprPtr> args) {
    auto f = std::make_shared<PredForm>();
    f->kind = PredForm::Call;
    f->var = std::move(var);
    f->args = std::move(args);
    return f;
}

inline PredPtr pf_neg(PredPtr a) {
    if (a->kind == PredForm::Simple) return pf_simple(mk_not(a->simple));
    auto f = std::make_shared<PredForm>();
    f->kind = PredForm::Neg;
    f->a = std::move(a);
    return f;
}

inline PredPtr pf_bin(PredForm::Kind k, PredPtr a, PredPtr b) {
    // constant folding keeps translated systems readable
    if (k == PredForm::And) {
        if (pf_is_const(a, true)) return b;
        if (pf_is_const(b, true)) return a;
        if (pf_is_const(a, false) || pf_is_const(b, false)) return pf_false();
    } else if (k == PredForm::Or) {
        if (pf_is_const(a, false)) return b;
        if (pf_is_const(b, false)) return a;
        if (pf_is_const(a, true) || pf_is_const(b, true)) return pf_true();
    } else if (k == PredForm::Imp) {
        if (pf_is_const(a, true)) return b;
        if (pf_is_const(a, false) || pf_is_const(b, true)) return pf_true();
    }
    auto f = std::make_shared<PredForm>();
    f->kind = k;
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

inline PredPtr pf_quant(PredForm::Kind k, std::vector<Param> qvars, PredPtr body) {
    if (qvars.empty()) return body;
    if (pf_is_const(body, true) || pf_is_const(body, false)) return body;
    auto f = std::make_shared<PredForm>();
    f->kind = k;
    f->qvars = std::move(qvars);
    f->a = std::move(body);
    return f;
}

struct Equation {
    FixOp sigma;
    std::string name;
    std::vector<Param> params;
    PredPtr rhs;
};

struct Pbes {
    std::shared_ptr<SortTable> sorts;
    std::vector<Equation> equations;
    std::string init_var;
    std::vector<ExprPtr> init_args;  // closed

    int index_of(const std::string& name) const {
        for (size_t i = 0; i < equations.size(); ++i)
            if (equations[i].name == name) return int(i);
        return -1;
    }
};

// --- substitution -------------------------------------------------------------

inline PredPtr pf_substitute(const PredPtr& f, const ExprSubst& sub) {
    if (sub.empty()) return f;
    switch (f->kind) {
        case PredForm::Simple: {
            ExprPtr e = substitute(f->simple, sub);
            return e == f->simple ? f : pf_simple(e);
        }
        case PredForm::Call: {
            bool changed = false;
            std::vector<ExprPtr> args;
            args.reserve(f->args.size());
            for (const auto& a : f->args) {
                args.push_back(substitute(a, sub));
                changed |= args.back() != a;
            }
            return changed ? pf_call(f->var, std::move(args)) : f;
        }
        case PredForm::Neg: {
            PredPtr a = pf_substitute(f->a, sub);
            return a == f->a ? f : pf_neg(a);
        }
        case PredForm::And:
        case PredForm::Or:
        case PredForm::Imp: {
            PredPtr a = pf_substitute(f->a, sub);
            PredPtr b = pf_substitute(f->b, sub);
            return (a == f->a && b == f->b) ? f : pf_bin(f->kind, a, b);
        }
        case PredForm::Forall:
        case PredForm::Exists: {
            // binders in translated systems are fresh by construction
            ExprSubst filtered;
            for (const auto& [n, e] : sub) {
                bool shadowed = false;
                for (const auto& q : f->qvars) shadowed |= q.name == n;
                if (!shadowed) filtered.push_back({n, e});
            }
            PredPtr a = pf_substitute(f->a, filtered);
            return a == f->a ? f : pf_quant(f->kind, f->qvars, a);
        }
    }
    return f;
}

// --- well-formedness -----------------------------------------------------------

// Collects diagnostics: duplicate names, unresolved calls, arity/sort errors,
// and positivity (predicate variables under an odd number of negations or on
// the left of an implication chain are rejected).
inline std::vector<std::string> check_wellformed(const Pbes& p) {
    std::vector<std::string> out;
    std::unordered_map<std::string, const Equation*> by_name;
    for (const auto& eq : p.equations) {
        if (!by_name.emplace(eq.name, &eq).second)
            out.push_back("duplicate equation name '" + eq.name + "'");
    }

    struct Walk {
        const Pbes& p;
        const std::unordered_map<std::string, const Equation*>& by_name;
        std::vector<std::string>& out;

        void visit(const PredPtr& f, bool positive, const std::string& ctx) {
            switch (f->kind) {
                case PredForm::Simple: return;
                case PredForm::Call: {
                    if (!positive)
                        out.push_back("negative occurrence of '" + f->var + "' in " + ctx);
                    auto it = by_name.find(f->var);
                    if (it == by_name.end()) {
                        out.push_back("unresolved predicate variable '" + f->var + "' in " + ctx);
                    } else if (it->second->params.size() != f->args.size()) {
                        out.push_back("wrong arity for '" + f->var + "' in " + ctx);
                    }
                    return;
                }
                case PredForm::Neg: visit(f->a, !positive, ctx); return;
                case PredForm::Imp:
                    visit(f->a, !positive, ctx);
                    visit(f->b, positive, ctx);
                    return;
                case PredForm::And:
                case PredForm::Or:
                    visit(f->a, positive, ctx);
                    visit(f->b, positive, ctx);
                    return;
                case PredForm::Forall:
                case PredForm::Exists:
                    visit(f->a, positive, ctx);
                    return;
            }
        }
    } walk{p, by_name, out};

    for (const auto& eq : p.equations) walk.visit(eq.rhs, true, "equation " + eq.name);
    if (!by_name.count(p.init_var))
        out.push_back("initial instance names unknown variable '" + p.init_var + "'");
    else if (by_name.at(p.init_var)->params.size() != p.init_args.size())
        out.push_back("initial instance has the wrong arity");
    return out;
}

// --- printing -------------------------------------------------------------------

inline int pf_prec(const PredForm& f) {
    switch (f.kind) {
        case PredForm::Imp: return 1;
        case PredForm::Or: return 2;
        case PredForm::And: return 3;
        case PredForm::Forall:
        case PredForm::Exists: return 0;
        default: return 9;
    }
}

inline void print_pred(std::ostream& os, const PredForm& f, const SortTable& sorts,
                       int parent_prec = 0) {
    switch (f.kind) {
        case PredForm::Simple:
            print_expr(os, *f.simple, sorts, parent_prec >= 4 ? 8 : 3);
            return;
        case PredForm::Call:
            os << f.var;
            if (!f.args.empty()) {
                os << "(";
                for (size_t i = 0; i < f.args.size(); ++i) {
                    if (i) os << ", ";
                    print_expr(os, *f.args[i], sorts);
                }
                os << ")";
            }
            return;
        case PredForm::Neg:
            os << "!";
            print_pred(os, *f.a, sorts, 8);
            return;
        case PredForm::And:
        case PredForm::Or:
        case PredForm::Imp: {
            int p = pf_prec(f);
            const char* sym = f.kind == PredForm::And ? " && " : f.kind == PredForm::Or ? " || " : " => ";
            if (p <= parent_prec) os << "(";
            print_pred(os, *f.a, sorts, p);
            os << sym;
            print_pred(os, *f.b, sorts, f.kind == PredForm::Imp ? p - 1 : p);
            if (p <= parent_prec) os << ")";
            return;
        }
        case PredForm::Forall:
        case PredForm::Exists:
            if (parent_prec > 0) os << "(";
            os << (f.kind == PredForm::Forall ? "forall " : "exists ");
            print_params(os, f.qvars, sorts);
            os << ". ";
            print_pred(os, *f.a, sorts, 0);
            if (parent_prec > 0) os << ")";
            return;
    }
}

inline std::string print_pbes(const Pbes& p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.equations.size(); ++i) {
        const Equation& eq = p.equations[i];
        os << (i == 0 ? "pbes " : "     ");
        os << (eq.sigma == FixOp::Mu ? "mu " : "nu ") << eq.name << "(";
        print_params(os, eq.params, *p.sorts);
        os << ") = ";
        print_pred(os, *eq.rhs, *p.sorts);
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
