#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace ehrxqa::nsql {

struct Expr;
struct SelectStmt;
using ExprPtr = std::unique_ptr<Expr>;
using SelectPtr = std::unique_ptr<SelectStmt>;

enum class BinaryOp {
    Or,
    And,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Concat,
    Like,
};

enum class UnaryOp { Neg, Not };

/// Expression node. One tagged struct keeps cloning/printing/equality in a
/// single switch; only the fields for `kind` are meaningful.
struct Expr {
    enum class Kind {
        IntLit,
        FloatLit,
        StringLit,
        NullLit,
        Star,       // bare * or qualifier.*
        ColumnRef,  // [qualifier.]name
        Unary,
        Binary,
        FuncCall,
        FuncVqa,
        InList,      // args[0] = subject, args[1..] = items
        InSubquery,  // args[0] = subject
        Between,     // args[0] = subject, args[1] = lo, args[2] = hi
        IsNull,      // args[0] = subject
        Exists,
        Case,      // operand optional; when/then pairs; else optional
        Subquery,  // scalar subquery
    };

    Kind kind;

    std::int64_t int_value = 0;
    std::string text;       // string literal / float lexeme / FUNC_VQA sub-question
    std::string qualifier;  // ColumnRef / Star table qualifier
    std::string name;       // ColumnRef column / FuncCall name

    UnaryOp un_op = UnaryOp::Neg;
    BinaryOp bin_op = BinaryOp::And;
    bool negated = false;        // NOT IN / NOT BETWEEN / IS NOT NULL / NOT LIKE
    bool func_distinct = false;  // count(distinct x)

    std::vector<ExprPtr> args;
    SelectPtr subquery;  // InSubquery / Exists / Subquery

    ExprPtr case_operand;
    std::vector<ExprPtr> case_when;
    std::vector<ExprPtr> case_then;
    ExprPtr case_else;

    static ExprPtr make(Kind k) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        return e;
    }
};

struct FromItem {
    enum class Kind { TableRef, Subquery };
    enum class Join { None, Comma, Inner, Left, Cross };

    Kind kind = Kind::TableRef;
    std::string table;
    std::string alias;  // empty = unaliased table ref
    SelectPtr subquery;
    Join join = Join::None;  // how this item attaches to the previous one
    ExprPtr join_condition;  // inner/left only
};

struct SelectItem {
    ExprPtr expr;
    std::string alias;
};

struct SelectCore {
    bool distinct = false;
    std::vector<SelectItem> items;
    std::vector<FromItem> from;
    ExprPtr where;
    std::vector<ExprPtr> group_by;
    ExprPtr having;
};

struct OrderItem {
    ExprPtr expr;
    bool desc = false;
};

enum class SetOp { Union, UnionAll, Intersect, Except };

/// One SELECT statement, possibly compound. `cores[i+1]` attaches to the
/// running compound with `ops[i]`; ORDER BY / LIMIT apply to the whole.
struct SelectStmt {
    std::vector<SelectCore> cores;
    std::vector<SetOp> ops;
    std::vector<OrderItem> order_by;
    ExprPtr limit;
    ExprPtr offset;
};

ExprPtr clone(const Expr& e);
SelectPtr clone(const SelectStmt& s);

bool equal(const Expr& a, const Expr& b);
bool equal(const SelectStmt& a, const SelectStmt& b);

/// Depth-first visit over every expression in the statement, including
/// expressions nested in subqueries. The visitor receives mutable pointers.
void visit_exprs(SelectStmt& stmt, const std::function<void(Expr&)>& fn);
void visit_exprs(Expr& expr, const std::function<void(Expr&)>& fn);

std::size_t count_func_vqa(const SelectStmt& stmt);

}  // namespace ehrxqa::nsql
