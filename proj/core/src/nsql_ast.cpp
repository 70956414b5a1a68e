#include "ehrxqa/nsql/ast.hpp"

#include <functional>

namespace ehrxqa::nsql {
namespace {

ExprPtr clone_opt(const ExprPtr& e) { return e ? clone(*e) : nullptr; }
SelectPtr clone_opt(const SelectPtr& s) { return s ? clone(*s) : nullptr; }

bool equal_opt(const ExprPtr& a, const ExprPtr& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return equal(*a, *b);
}

bool equal_opt(const SelectPtr& a, const SelectPtr& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return equal(*a, *b);
}

}  // namespace

ExprPtr clone(const Expr& e) {
    auto out = Expr::make(e.kind);
    out->int_value = e.int_value;
    out->text = e.text;
    out->qualifier = e.qualifier;
    out->name = e.name;
    out->un_op = e.un_op;
    out->bin_op = e.bin_op;
    out->negated = e.negated;
    out->func_distinct = e.func_distinct;
    for (const auto& a : e.args) out->args.push_back(clone_opt(a));
    out->subquery = clone_opt(e.subquery);
    out->case_operand = clone_opt(e.case_operand);
    for (const auto& w : e.case_when) out->case_when.push_back(clone_opt(w));
    for (const auto& t : e.case_then) out->case_then.push_back(clone_opt(t));
    out->case_else = clone_opt(e.case_else);
    return out;
}

SelectPtr clone(const SelectStmt& s) {
    auto out = std::make_unique<SelectStmt>();
    for (const auto& core : s.cores) {
        SelectCore c;
        c.distinct = core.distinct;
        for (const auto& item : core.items) {
            c.items.push_back({clone_opt(item.expr), item.alias});
        }
        for (const auto& f : core.from) {
            FromItem fi;
            fi.kind = f.kind;
            fi.table = f.table;
            fi.alias = f.alias;
            fi.subquery = clone_opt(f.subquery);
            fi.join = f.join;
            fi.join_condition = clone_opt(f.join_condition);
            c.from.push_back(std::move(fi));
        }
        c.where = clone_opt(core.where);
        for (const auto& g : core.group_by) c.group_by.push_back(clone_opt(g));
        c.having = clone_opt(core.having);
        out->cores.push_back(std::move(c));
    }
    out->ops = s.ops;
    for (const auto& o : s.order_by) out->order_by.push_back({clone_opt(o.expr), o.desc});
    out->limit = clone_opt(s.limit);
    out->offset = clone_opt(s.offset);
    return out;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    if (a.int_value != b.int_value || a.text != b.text || a.qualifier != b.qualifier ||
        a.name != b.name)
        return false;
    if (a.un_op != b.un_op || a.bin_op != b.bin_op || a.negated != b.negated ||
        a.func_distinct != b.func_distinct)
        return false;
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (!equal_opt(a.args[i], b.args[i])) return false;
    }
    if (!equal_opt(a.subquery, b.subquery)) return false;
    if (!equal_opt(a.case_operand, b.case_operand)) return false;
    if (a.case_when.size() != b.case_when.size() || a.case_then.size() != b.case_then.size())
        return false;
    for (std::size_t i = 0; i < a.case_when.size(); ++i) {
        if (!equal_opt(a.case_when[i], b.case_when[i])) return false;
    }
    for (std::size_t i = 0; i < a.case_then.size(); ++i) {
        if (!equal_opt(a.case_then[i], b.case_then[i])) return false;
    }
    return equal_opt(a.case_else, b.case_else);
}

bool equal(const SelectStmt& a, const SelectStmt& b) {
    if (a.cores.size() != b.cores.size() || a.ops != b.ops) return false;
    for (std::size_t i = 0; i < a.cores.size(); ++i) {
        const SelectCore& x = a.cores[i];
        const SelectCore& y = b.cores[i];
        if (x.distinct != y.distinct || x.items.size() != y.items.size() ||
            x.from.size() != y.from.size() || x.group_by.size() != y.group_by.size())
            return false;
        for (std::size_t j = 0; j < x.items.size(); ++j) {
            if (x.items[j].alias != y.items[j].alias) return false;
            if (!equal_opt(x.items[j].expr, y.items[j].expr)) return false;
        }
        for (std::size_t j = 0; j < x.from.size(); ++j) {
            const FromItem& f = x.from[j];
            const FromItem& g = y.from[j];
            if (f.kind != g.kind || f.table != g.table || f.alias != g.alias || f.join != g.join)
                return false;
            if (!equal_opt(f.subquery, g.subquery)) return false;
            if (!equal_opt(f.join_condition, g.join_condition)) return false;
        }
        if (!equal_opt(x.where, y.where) || !equal_opt(x.having, y.having)) return false;
        for (std::size_t j = 0; j < x.group_by.size(); ++j) {
            if (!equal_opt(x.group_by[j], y.group_by[j])) return false;
        }
    }
    if (a.order_by.size() != b.order_by.size()) return false;
    for (std::size_t i = 0; i < a.order_by.size(); ++i) {
        if (a.order_by[i].desc != b.order_by[i].desc) return false;
        if (!equal_opt(a.order_by[i].expr, b.order_by[i].expr)) return false;
    }
    return equal_opt(a.limit, b.limit) && equal_opt(a.offset, b.offset);
}

void visit_exprs(Expr& expr, const std::function<void(Expr&)>& fn) {
    fn(expr);
    for (auto& a : expr.args) {
        if (a) visit_exprs(*a, fn);
    }
    if (expr.subquery) visit_exprs(*expr.subquery, fn);
    if (expr.case_operand) visit_exprs(*expr.case_operand, fn);
    for (auto& w : expr.case_when) {
        if (w) visit_exprs(*w, fn);
    }
    for (auto& t : expr.case_then) {
        if (t) visit_exprs(*t, fn);
    }
    if (expr.case_else) visit_exprs(*expr.case_else, fn);
}

void visit_exprs(SelectStmt& stmt, const std::function<void(Expr&)>& fn) {
    for (auto& core : stmt.cores) {
        for (auto& item : core.items) {
            if (item.expr) visit_exprs(*item.expr, fn);
        }
        for (auto& f : core.from) {
            if (f.subquery) visit_exprs(*f.subquery, fn);
            if (f.join_condition) visit_exprs(*f.join_condition, fn);
        }
        if (core.where) visit_exprs(*core.where, fn);
        for (auto& g : core.group_by) {
            if (g) visit_exprs(*g, fn);
        }
        if (core.having) visit_exprs(*core.having, fn);
    }
    for (auto& o : stmt.order_by) {
        if (o.expr) visit_exprs(*o.expr, fn);
    }
    if (stmt.limit) visit_exprs(*stmt.limit, fn);
    if (stmt.offset) visit_exprs(*stmt.offset, fn);
}

std::size_t count_func_vqa(const SelectStmt& stmt) {
    std::size_t n = 0;
    visit_exprs(const_cast<SelectStmt&>(stmt), [&](Expr& e) {
        if (e.kind == Expr::Kind::FuncVqa) ++n;
    });
    return n;
}

}  // namespace ehrxqa::nsql
