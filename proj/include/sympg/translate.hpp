#pragma once

// Translation of (linear process, mu-calculus formula) into a PBES.
//
// Structured mode makes the process structure visible in the equation system:
// every modal operator that matches two or more summands produces a header
// equation (a pure conjunction/disjunction over fresh per-summand variables)
// plus one equation per matching summand. Summands whose action cannot match
// the action formula are dropped; a single matching summand is inlined; a
// non-atomic subresult under a modal operator is shared through one fresh
// equation rather than copied per summand. Unstructured mode is the older
// translation: modal operators expand in line, one equation per fixpoint.
//
// Fresh variables are named parent + ordinal (Y -> Y1 -> Y12) in order of
// appearance, per-summand children by their match ordinal.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <sympg/parser.hpp>
#include <sympg/pbes.hpp>

namespace sympg {

class Translator {
public:
    static Pbes run(const SpecFile& spec, const MuFormPtr& phi0, bool structured) {
        Translator t(spec, structured);
        return t.translate(phi0);
    }

private:
    Translator(const SpecFile& spec, bool structured) : spec_(spec), structured_(structured) {}

    struct Binding {
        std::string eq_name;
        std::vector<Param> x_f;      // formula parameters
        std::vector<Param> context;  // x_p followed by enclosing quantifier vars
    };

    struct FreshMeta {
        std::string parent_fix;   // final name of the enclosing fixpoint equation
        bool is_child = false;    // per-summand child of a header
        std::string header;       // placeholder name of the header (children only)
        int ordinal = 0;          // match ordinal (children only)
    };

    const SpecFile& spec_;
    bool structured_;
    std::vector<Equation> eqs_;
    std::unordered_map<std::string, Binding> bindings_;
    std::unordered_set<std::string> used_names_;
    std::unordered_map<std::string, FreshMeta> fresh_meta_;
    int placeholder_counter_ = 0;

    // --- entry ------------------------------------------------------------------

    Pbes translate(const MuFormPtr& phi0) {
        if (phi0->kind != MuForm::Fix)
            throw spec_error("formula must have a fixpoint operator as outermost operator");
        collect_fix_names(*phi0);

        std::vector<Param> ctx = spec_.proc.params;
        emit_fix(*phi0, ctx);

        Pbes p;
        p.sorts = spec_.sorts;
        p.equations = std::move(eqs_);
        rename_fresh(p);

        const Binding& top = bindings_.at(phi0->var);
        p.init_var = top.eq_name;
        for (const auto& [param, init] : phi0->fix_params) p.init_args.push_back(init);
        for (const auto& e : spec_.proc.init) p.init_args.push_back(e);

        auto diags = check_wellformed(p);
        if (!diags.empty()) throw spec_error("translation produced ill-formed PBES: " + diags[0]);
        return p;
    }

    void collect_fix_names(const MuForm& f) {
        if (f.kind == MuForm::Fix) {
            if (!used_names_.insert(f.var).second)
                throw spec_error("propositional variable '" + f.var + "' bound twice");
        }
        if (f.a) collect_fix_names(*f.a);
        if (f.b) collect_fix_names(*f.b);
    }

    // --- E: one equation block per fixpoint subformula ----------------------------

    void emit_fix(const MuForm& fix, const std::vector<Param>& ctx) {
        Binding b;
        b.eq_name = fix.var;
        for (const auto& [p, _] : fix.fix_params) b.x_f.push_back(p);
        b.context = ctx;
        bindings_[fix.var] = b;

        std::vector<Param> vbar = b.x_f;
        vbar.insert(vbar.end(), ctx.begin(), ctx.end());

        std::vector<Equation> block;
        PredPtr psi = rhs(fix.a, vbar, fix.sigma, fix.var, block);
        Equation head{fix.sigma, fix.var, vbar, psi};
        eqs_.push_back(std::move(head));
        for (auto& eq : block) eqs_.push_back(std::move(eq));

        // nested blocks see this fixpoint's formula parameters as context
        walk_nested(*fix.a, vbar);
    }

    void walk_nested(const MuForm& f, std::vector<Param> ctx) {
        switch (f.kind) {
            case MuForm::Fix:
                emit_fix(f, ctx);
                return;
            case MuForm::Forall:
            case MuForm::Exists:
                for (const auto& q : f.qvars) ctx.push_back(q);
                walk_nested(*f.a, std::move(ctx));
                return;
            case MuForm::And:
            case MuForm::Or:
                walk_nested(*f.a, ctx);
                walk_nested(*f.b, std::move(ctx));
                return;
            case MuForm::Box:
            case MuForm::Diamond:
                walk_nested(*f.a, std::move(ctx));
                return;
            default:
                return;
        }
    }

    // --- RHS ------------------------------------------------------------------------

    PredPtr rhs(const MuFormPtr& f, const std::vector<Param>& vbar, FixOp sigma,
                const std::string& parent_fix, std::vector<Equation>& out) {
        switch (f->kind) {
            case MuForm::Simple:
                return pf_simple(f->simple);
            case MuForm::And:
            case MuForm::Or: {
                PredPtr a = rhs(f->a, vbar, sigma, parent_fix, out);
                PredPtr b = rhs(f->b, vbar, sigma, parent_fix, out);
                return pf_bin(f->kind == MuForm::And ? PredForm::And : PredForm::Or, a, b);
            }
            case MuForm::Forall:
            case MuForm::Exists: {
                std::vector<Param> inner = vbar;
                inner.insert(inner.end(), f->qvars.begin(), f->qvars.end());
                PredPtr body = rhs(f->a, inner, sigma, parent_fix, out);
                return pf_quant(f->kind == MuForm::Forall ? PredForm::Forall : PredForm::Exists,
                                f->qvars, body);
            }
            case MuForm::VarRef: {
                auto it = bindings_.find(f->var);
                if (it == bindings_.end())
                    throw spec_error("unbound propositional variable '" + f->var + "'");
                const Binding& b = it->second;
                if (f->args.size() != b.x_f.size())
                    throw spec_error("variable '" + f->var + "' applied to " +
                                     std::to_string(f->args.size()) + " arguments, expected " +
                                     std::to_string(b.x_f.size()));
                std::vector<ExprPtr> args = f->args;
                for (const auto& p : b.context) args.push_back(mk_var(p.name, ExType::ref(p.sort)));
                return pf_call(b.eq_name, std::move(args));
            }
            case MuForm::Fix: {
                // the block itself is emitted by walk_nested; here only the call
                Binding b;
                b.eq_name = f->var;
                for (const auto& [p, _] : f->fix_params) b.x_f.push_back(p);
                // context at the binder: vbar minus this fixpoint's own x_f prefix —
                // vbar here is the caller's context, which is exactly the binder's
                b.context = vbar_context(vbar);
                bindings_[f->var] = b;
                std::vector<ExprPtr> args;
                for (const auto& [p, init] : f->fix_params) args.push_back(init);
                for (const auto& p : b.context) args.push_back(mk_var(p.name, ExType::ref(p.sort)));
                return pf_call(f->var, std::move(args));
            }
            case MuForm::Box:
            case MuForm::Diamond:
                return rhs_modal(*f, vbar, sigma, parent_fix, out);
        }
        throw spec_error("unreachable formula kind");
    }

    // vbar = [x_f of enclosing fixpoint] ++ [x_p] ++ [quantifier vars]; the
    // context passed to nested binders excludes the x_f prefix but keeps the
    // rest. x_f params of the *enclosing* fixpoint stay visible to the nested
    // equation as ordinary in-scope data variables, so they are part of the
    // nested context too: only the leading x_p boundary matters. We recover
    // the context as everything from the first process parameter on, plus any
    // leading x_f entries, i.e. vbar itself.
    std::vector<Param> vbar_context(const std::vector<Param>& vbar) const { return vbar; }

    PredPtr rhs_modal(const MuForm& f, const std::vector<Param>& vbar, FixOp sigma,
                      const std::string& parent_fix, std::vector<Equation>& out) {
        bool box = f.kind == MuForm::Box;
        std::vector<Equation> body_eqs;
        PredPtr psi = rhs(f.a, vbar, sigma, parent_fix, body_eqs);

        std::vector<std::pair<size_t, ExprPtr>> matches;  // (summand index, residual)
        for (size_t i = 0; i < spec_.proc.summands.size(); ++i) {
            auto residual = analyze_match(*f.act, spec_.proc.summands[i]);
            if (residual) matches.emplace_back(i, *residual);
        }

        if (!structured_) {
            PredPtr acc = box ? pf_true() : pf_false();
            bool first = true;
            for (const auto& [i, residual] : matches) {
                PredPtr one = apply_group(i, psi, residual, box, vbar);
                acc = first ? one : pf_bin(box ? PredForm::And : PredForm::Or, acc, one);
                first = false;
            }
            for (auto& eq : body_eqs) out.push_back(std::move(eq));
            return acc;
        }

        // share a non-atomic subresult through one fresh equation
        if (psi->kind != PredForm::Simple && psi->kind != PredForm::Call && matches.size() >= 1) {
            std::string wrap = fresh_placeholder(parent_fix);
            body_eqs.insert(body_eqs.begin(), Equation{sigma, wrap, vbar, psi});
            psi = pf_call(wrap, vbar_args(vbar));
        }

        PredPtr result;
        std::vector<Equation> modal_eqs;
        if (matches.empty()) {
            result = box ? pf_true() : pf_false();
        } else if (matches.size() == 1) {
            result = apply_group(matches[0].first, psi, matches[0].second, box, vbar);
        } else {
            std::string header = fresh_placeholder(parent_fix);
            PredPtr head_rhs;
            std::vector<Equation> children;
            for (size_t j = 0; j < matches.size(); ++j) {
                std::string child = child_placeholder(parent_fix, header, int(j + 1));
                PredPtr call = pf_call(child, vbar_args(vbar));
                head_rhs = j == 0 ? call
                                  : pf_bin(box ? PredForm::And : PredForm::Or, head_rhs, call);
                children.push_back(Equation{
                    sigma, child, vbar,
                    apply_group(matches[j].first, psi, matches[j].second, box, vbar)});
            }
            modal_eqs.push_back(Equation{sigma, header, vbar, head_rhs});
            for (auto& c : children) modal_eqs.push_back(std::move(c));
            result = pf_call(header, vbar_args(vbar));
        }

        for (auto& eq : modal_eqs) out.push_back(std::move(eq));
        for (auto& eq : body_eqs) out.push_back(std::move(eq));
        return result;
    }

    static std::vector<ExprPtr> vbar_args(const std::vector<Param>& vbar) {
        std::vector<ExprPtr> args;
        args.reserve(vbar.size());
        for (const auto& p : vbar) args.push_back(mk_var(p.name, ExType::ref(p.sort)));
        return args;
    }

    // --- static action matching ----------------------------------------------------

    // Residual condition under which summand s's action satisfies af, or
    // nullopt when it cannot match at all.
    std::optional<ExprPtr> analyze_match(const ActForm& af, const Summand& s) const {
        switch (af.kind) {
            case ActForm::True: return mk_true();
            case ActForm::False: return std::nullopt;
            case ActForm::Not: {
                auto r = analyze_match(*af.a, s);
                if (!r) return mk_true();
                if (is_const_bool(*r, true)) return std::nullopt;
                return mk_not(*r);
            }
            case ActForm::And: {
                auto a = analyze_match(*af.a, s);
                if (!a) return std::nullopt;
                auto b = analyze_match(*af.b, s);
                if (!b) return std::nullopt;
                ExprPtr e = mk_and(*a, *b);
                if (is_const_bool(e, false)) return std::nullopt;
                return e;
            }
            case ActForm::Or: {
                auto a = analyze_match(*af.a, s);
                auto b = analyze_match(*af.b, s);
                if (!a) return b;
                if (!b) return a;
                ExprPtr e = mk_or(*a, *b);
                if (is_const_bool(e, false)) return std::nullopt;
                return e;
            }
            case ActForm::Match: {
                if (af.name != s.action) return std::nullopt;
                if (af.any_args) return mk_true();
                if (af.args.size() != s.action_args.size())
                    throw spec_error("action pattern '" + af.name + "' has arity " +
                                     std::to_string(af.args.size()) + ", summand action has arity " +
                                     std::to_string(s.action_args.size()));
                ExprPtr cond = mk_true();
                for (size_t k = 0; k < af.args.size(); ++k) {
                    if (!af.args[k]) continue;  // wildcard
                    cond = mk_and(cond, fold_eq(s.action_args[k], *af.args[k]));
                }
                if (is_const_bool(cond, false)) return std::nullopt;
                return cond;
            }
        }
        return std::nullopt;
    }

    static ExprPtr fold_eq(const ExprPtr& a, const ExprPtr& b) {
        if (a->op == ExOp::Const && b->op == ExOp::Const)
            return (a->cval == b->cval) ? mk_true() : mk_false();
        if (a->op == ExOp::Var && b->op == ExOp::Var && a->var == b->var) return mk_true();
        return mk_op(ExOp::Eq, {a, b}, ExType::boolean());
    }

    // --- ApplyGroup --------------------------------------------------------------------

    PredPtr apply_group(size_t i, const PredPtr& psi, const ExprPtr& residual, bool box,
                        const std::vector<Param>& vbar) const {
        const Summand& s = spec_.proc.summands[i];

        // rename sum variables clashing with anything in scope
        std::unordered_set<std::string> avoid;
        for (const auto& p : vbar) avoid.insert(p.name);
        for (const auto& p : spec_.proc.params) avoid.insert(p.name);
        ExprSubst ren;
        std::vector<Param> yvars;
        for (const auto& y : s.sum_vars) {
            std::string name = y.name;
            while (avoid.count(name)) name += "'";
            avoid.insert(name);
            yvars.push_back(Param{name, y.sort});
            if (name != y.name)
                ren.push_back({y.name, mk_var(name, ExType::ref(y.sort))});
        }

        ExprPtr cond = mk_and(ren.empty() ? residual : substitute(residual, ren),
                              ren.empty() ? s.guard : substitute(s.guard, ren));

        ExprSubst next;
        for (size_t k = 0; k < spec_.proc.params.size(); ++k) {
            ExprPtr g = ren.empty() ? s.next_state[k] : substitute(s.next_state[k], ren);
            next.push_back({spec_.proc.params[k].name, g});
        }
        PredPtr body = pf_substitute(psi, next);

        one_point(yvars, cond, body);
        drop_unused(yvars, cond, body);

        if (box) {
            PredPtr impl;
            if (is_const_bool(cond, true)) impl = body;
            else if (pf_is_const(body, false)) impl = pf_simple(mk_not(cond));
            else impl = pf_bin(PredForm::Imp, pf_simple(cond), body);
            return pf_quant(PredForm::Forall, yvars, impl);
        }
        PredPtr conj;
        if (is_const_bool(cond, true)) conj = body;
        else if (pf_is_const(body, true)) conj = pf_simple(cond);
        else conj = pf_bin(PredForm::And, pf_simple(cond), body);
        return pf_quant(PredForm::Exists, yvars, conj);
    }

    // If cond contains a conjunct y == e (or e == y) with e independent of all
    // sum variables, substitute e for y and drop the quantifier over y.
    void one_point(std::vector<Param>& yvars, ExprPtr& cond, PredPtr& body) const {
        bool changed = true;
        while (changed && !yvars.empty()) {
            changed = false;
            std::vector<ExprPtr> conjuncts;
            flatten_and(cond, conjuncts);
            for (size_t ci = 0; ci < conjuncts.size() && !changed; ++ci) {
                const ExprPtr& c = conjuncts[ci];
                if (c->op != ExOp::Eq) continue;
                for (size_t yi = 0; yi < yvars.size() && !changed; ++yi) {
                    const std::string& y = yvars[yi].name;
                    ExprPtr other;
                    if (c->kids[0]->op == ExOp::Var && c->kids[0]->var == y) other = c->kids[1];
                    else if (c->kids[1]->op == ExOp::Var && c->kids[1]->var == y) other = c->kids[0];
                    else continue;
                    bool independent = true;
                    for (const auto& yv : yvars)
                        if (mentions(*other, yv.name)) { independent = false; break; }
                    if (!independent) continue;
                    ExprSubst sub{{y, other}};
                    ExprPtr rest = mk_true();
                    for (size_t k = 0; k < conjuncts.size(); ++k)
                        if (k != ci) rest = mk_and(rest, substitute(conjuncts[k], sub));
                    cond = rest;
                    body = pf_substitute(body, sub);
                    yvars.erase(yvars.begin() + long(yi));
                    changed = true;
                }
            }
        }
    }

    static void flatten_and(const ExprPtr& e, std::vector<ExprPtr>& out) {
        if (e->op == ExOp::And) {
            flatten_and(e->kids[0], out);
            flatten_and(e->kids[1], out);
        } else if (!is_const_bool(e, true)) {
            out.push_back(e);
        }
    }

    void drop_unused(std::vector<Param>& yvars, const ExprPtr& cond, const PredPtr& body) const {
        for (size_t yi = yvars.size(); yi-- > 0;) {
            const std::string& y = yvars[yi].name;
            if (!mentions(*cond, y) && !pf_mentions(body, y))
                yvars.erase(yvars.begin() + long(yi));
        }
    }

    static bool pf_mentions(const PredPtr& f, const std::string& name) {
        switch (f->kind) {
            case PredForm::Simple: return mentions(*f->simple, name);
            case PredForm::Call:
                for (const auto& a : f->args)
                    if (mentions(*a, name)) return true;
                return false;
            case PredForm::Neg: return pf_mentions(f->a, name);
            case PredForm::And:
            case PredForm::Or:
            case PredForm::Imp:
                return pf_mentions(f->a, name) || pf_mentions(f->b, name);
            case PredForm::Forall:
            case PredForm::Exists:
                for (const auto& q : f->qvars)
                    if (q.name == name) return false;
                return pf_mentions(f->a, name);
        }
        return false;
    }

    // --- fresh naming -----------------------------------------------------------------

    std::string fresh_placeholder(const std::string& parent_fix) {
        std::string ph = "%f" + std::to_string(placeholder_counter_++);
        fresh_meta_[ph] = FreshMeta{parent_fix, false, "", 0};
        return ph;
    }

    std::string child_placeholder(const std::string& parent_fix, const std::string& header,
                                  int ordinal) {
        std::string ph = "%f" + std::to_string(placeholder_counter_++);
        fresh_meta_[ph] = FreshMeta{parent_fix, true, header, ordinal};
        return ph;
    }

    void rename_fresh(Pbes& p) {
        std::unordered_map<std::string, std::string> final_name;
        std::unordered_map<std::string, int> counter;
        // headers and wraps first, in order of appearance in the system
        for (const auto& eq : p.equations) {
            auto it = fresh_meta_.find(eq.name);
            if (it == fresh_meta_.end() || it->second.is_child) continue;
            std::string base = it->second.parent_fix + std::to_string(++counter[it->second.parent_fix]);
            final_name[eq.name] = ensure_unique(base);
        }
        for (const auto& eq : p.equations) {
            auto it = fresh_meta_.find(eq.name);
            if (it == fresh_meta_.end() || !it->second.is_child) continue;
            std::string base = final_name.at(it->second.header) + std::to_string(it->second.ordinal);
            final_name[eq.name] = ensure_unique(base);
        }
        for (auto& eq : p.equations) {
            auto it = final_name.find(eq.name);
            if (it != final_name.end()) eq.name = it->second;
            eq.rhs = rename_calls(eq.rhs, final_name);
        }
    }

    std::string ensure_unique(std::string name) {
        while (!used_names_.insert(name).second) name += "'";
        return name;
    }

    static PredPtr rename_calls(const PredPtr& f,
                                const std::unordered_map<std::string, std::string>& map) {
        switch (f->kind) {
            case PredForm::Simple: return f;
            case PredForm::Call: {
                auto it = map.find(f->var);
                if (it == map.end()) return f;
                return pf_call(it->second, f->args);
            }
            case PredForm::Neg: {
                PredPtr a = rename_calls(f->a, map);
                return a == f->a ? f : pf_neg(a);
            }
            case PredForm::And:
            case PredForm::Or:
            case PredForm::Imp: {
                PredPtr a = rename_calls(f->a, map);
                PredPtr b = rename_calls(f->b, map);
                if (a == f->a && b == f->b) return f;
                auto g = std::make_shared<PredForm>(*f);
                g->a = a;
                g->b = b;
                return g;
            }
            case PredForm::Forall:
            case PredForm::Exists: {
                PredPtr a = rename_calls(f->a, map);
                if (a == f->a) return f;
                auto g = std::make_shared<PredForm>(*f);
                g->a = a;
                return g;
            }
        }
        return f;
    }
};

inline Pbes translate(const SpecFile& spec, const MuFormPtr& phi0, bool structured = true) {
    return Translator::run(spec, phi0, structured);
}

}  // namespace sympg
