#pragma once

// ASTs for linear processes (guarded summands over typed parameters) and
// first-order modal mu-calculus formulae, plus the action-formula matcher.

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <sympg/expr.hpp>

namespace sympg {

struct Param {
    std::string name;
    int sort;
};

struct Summand {
    std::vector<Param> sum_vars;
    ExprPtr guard;
    std::string action;
    std::vector<ExprPtr> action_args;
    std::vector<ExprPtr> next_state;  // one expression per process parameter
    int line = 0;
};

struct LinearProcess {
    std::string name;
    std::vector<Param> params;
    std::vector<Summand> summands;
    std::vector<ExprPtr> init;  // closed expressions
};

// --- action formulae ---------------------------------------------------------

struct ActForm;
using ActFormPtr = std::shared_ptr<const ActForm>;

struct ActForm {
    enum Kind { True, False, Match, Not, And, Or } kind;
    std::string name;                               // Match
    bool any_args = false;                          // Match: bare name, any arity
    std::vector<std::optional<ExprPtr>> args;       // Match: nullopt = wildcard
    ActFormPtr a, b;
};

inline ActFormPtr mk_act(ActForm::Kind k, ActFormPtr a = nullptr, ActFormPtr b = nullptr) {
    auto f = std::make_shared<ActForm>();
    f->kind = k;
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

inline ActFormPtr mk_act_match(std::string name, bool any_args,
                               std::vector<std::optional<ExprPtr>> args = {}) {
    auto f = std::make_shared<ActForm>();
    f->kind = ActForm::Match;
    f->name = std::move(name);
    f->any_args = any_args;
    f->args = std::move(args);
    return f;
}

// Truth of an action predicate for a concrete action.
inline bool match_action(const ActForm& af, const std::string& name,
                         const std::vector<Value>& args, const Env& env,
                         const SortTable& sorts) {
    switch (af.kind) {
        case ActForm::True: return true;
        case ActForm::False: return false;
        case ActForm::Not: return !match_action(*af.a, name, args, env, sorts);
        case ActForm::And:
            return match_action(*af.a, name, args, env, sorts) &&
                   match_action(*af.b, name, args, env, sorts);
        case ActForm::Or:
            return match_action(*af.a, name, args, env, sorts) ||
                   match_action(*af.b, name, args, env, sorts);
        case ActForm::Match: {
            if (af.name != name) return false;
            if (af.any_args) return true;
            if (af.args.size() != args.size())
                throw spec_error("action pattern '" + af.name + "' expects " +
                                 std::to_string(af.args.size()) + " arguments, got " +
                                 std::to_string(args.size()));
            for (size_t i = 0; i < args.size(); ++i) {
                if (!af.args[i]) continue;  // wildcard
                Value want = eval_data(**af.args[i], env, sorts);
                if (want.is_undef() || want != args[i]) return false;
            }
            return true;
        }
    }
    return false;
}

// --- mu-calculus formulae -----------------------------------------------------

enum class FixOp { Mu, Nu };

struct MuForm;
using MuFormPtr = std::shared_ptr<const MuForm>;

struct MuForm {
    enum Kind { Simple, And, Or, Box, Diamond, Forall, Exists, VarRef, Fix } kind;
    ExprPtr simple;                      // Simple (already carries any negation)
    MuFormPtr a, b;                      // And/Or; a = body for Box/Diamond/quantifiers/Fix
    ActFormPtr act;                      // Box/Diamond
    std::vector<Param> qvars;            // Forall/Exists
    std::string var;                     // VarRef/Fix
    std::vector<ExprPtr> args;           // VarRef
    FixOp sigma = FixOp::Mu;             // Fix
    std::vector<std::pair<Param, ExprPtr>> fix_params;  // Fix: (param, init)
    int line = 0, col = 0;
};

inline MuFormPtr mk_mu_simple(ExprPtr e) {
    auto f = std::make_shared<MuForm>();
    f->kind = MuForm::Simple;
    f->simple = std::move(e);
    return f;
}

inline MuFormPtr mk_mu_bin(MuForm::Kind k, MuFormPtr a, MuFormPtr b) {
    auto f = std::make_shared<MuForm>();
    f->kind = k;
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

inline MuFormPtr mk_mu_modal(MuForm::Kind k, ActFormPtr act, MuFormPtr body) {
    auto f = std::make_shared<MuForm>();
    f->kind = k;
    f->act = std::move(act);
    f->a = std::move(body);
    return f;
}

inline MuFormPtr mk_mu_quant(MuForm::Kind k, std::vector<Param> qvars, MuFormPtr body) {
    auto f = std::make_shared<MuForm>();
    f->kind = k;
    f->qvars = std::move(qvars);
    f->a = std::move(body);
    return f;
}

inline MuFormPtr mk_mu_ref(std::string var, std::vector<ExprPtr> args) {
    auto f = std::make_shared<MuForm>();
    f->kind = MuForm::VarRef;
    f->var = std::move(var);
    f->args = std::move(args);
    return f;
}

inline MuFormPtr mk_mu_fix(FixOp sigma, std::string var,
                           std::vector<std::pair<Param, ExprPtr>> fix_params, MuFormPtr body) {
    auto f = std::make_shared<MuForm>();
    f->kind = MuForm::Fix;
    f->sigma = sigma;
    f->var = std::move(var);
    f->fix_params = std::move(fix_params);
    f->a = std::move(body);
    return f;
}

// --- printing ---------------------------------------------------------------

inline void print_act(std::ostream& os, const ActForm& a, const SortTable& sorts) {
    switch (a.kind) {
        case ActForm::True: os << "true"; return;
        case ActForm::False: os << "false"; return;
        case ActForm::Not:
            os << "!";
            if (a.a->kind == ActForm::And || a.a->kind == ActForm::Or) {
                os << "(";
                print_act(os, *a.a, sorts);
                os << ")";
            } else {
                print_act(os, *a.a, sorts);
            }
            return;
        case ActForm::And:
            print_act(os, *a.a, sorts);
            os << " && ";
            print_act(os, *a.b, sorts);
            return;
        case ActForm::Or:
            print_act(os, *a.a, sorts);
            os << " || ";
            print_act(os, *a.b, sorts);
            return;
        case ActForm::Match:
            os << a.name;
            if (!a.any_args) {
                os << "(";
                for (size_t i = 0; i < a.args.size(); ++i) {
                    if (i) os << ", ";
                    if (a.args[i]) print_expr(os, **a.args[i], sorts);
                    else os << "_";
                }
                os << ")";
            }
            return;
    }
}

inline void print_params(std::ostream& os, const std::vector<Param>& ps, const SortTable& sorts) {
    for (size_t i = 0; i < ps.size(); ++i) {
        if (i) os << ", ";
        os << ps[i].name << ": " << sorts.sort(ps[i].sort).name;
    }
}

inline void print_mu(std::ostream& os, const MuForm& f, const SortTable& sorts) {
    switch (f.kind) {
        case MuForm::Simple:
            print_expr(os, *f.simple, sorts, 3);  // parenthesize || and below
            return;
        case MuForm::And:
            os << "(";
            print_mu(os, *f.a, sorts);
            os << " && ";
            print_mu(os, *f.b, sorts);
            os << ")";
            return;
        case MuForm::Or:
            os << "(";
            print_mu(os, *f.a, sorts);
            os << " || ";
            print_mu(os, *f.b, sorts);
            os << ")";
            return;
        case MuForm::Box:
        case MuForm::Diamond:
            os << (f.kind == MuForm::Box ? "[" : "<");
            print_act(os, *f.act, sorts);
            os << (f.kind == MuForm::Box ? "] " : "> ");
            print_mu(os, *f.a, sorts);
            return;
        case MuForm::Forall:
        case MuForm::Exists:
            os << (f.kind == MuForm::Forall ? "forall " : "exists ");
            print_params(os, f.qvars, sorts);
            os << ". ";
            print_mu(os, *f.a, sorts);
            return;
        case MuForm::VarRef:
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
        case MuForm::Fix:
            os << (f.sigma == FixOp::Mu ? "mu " : "nu ") << f.var;
            if (!f.fix_params.empty()) {
                os << "(";
                for (size_t i = 0; i < f.fix_params.size(); ++i) {
                    if (i) os << ", ";
                    os << f.fix_params[i].first.name << ": "
                       << sorts.sort(f.fix_params[i].first.sort).name << " := ";
                    print_expr(os, *f.fix_params[i].second, sorts);
                }
                os << ")";
            }
            os << ". ";
            print_mu(os, *f.a, sorts);
            return;
    }
}

}  // namespace sympg
