#include "ehrxqa/nsql/parser.hpp"

#include <sstream>

#include "ehrxqa/errors.hpp"

namespace ehrxqa::nsql {
namespace {

// Binding strength; printing wraps a child in parens when it binds looser
// than its position requires, so parse(print(t)) == t.
int level_of(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Binary:
            switch (e.bin_op) {
                case BinaryOp::Or: return 1;
                case BinaryOp::And: return 2;
                case BinaryOp::Eq:
                case BinaryOp::Ne:
                case BinaryOp::Lt:
                case BinaryOp::Le:
                case BinaryOp::Gt:
                case BinaryOp::Ge:
                case BinaryOp::Like: return 4;
                case BinaryOp::Add:
                case BinaryOp::Sub:
                case BinaryOp::Concat: return 5;
                case BinaryOp::Mul:
                case BinaryOp::Div:
                case BinaryOp::Mod: return 6;
            }
            return 8;
        case Expr::Kind::Unary: return e.un_op == UnaryOp::Not ? 3 : 7;
        case Expr::Kind::InList:
        case Expr::Kind::InSubquery:
        case Expr::Kind::Between:
        case Expr::Kind::IsNull: return 4;
        default: return 8;
    }
}

const char* binary_op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::Or: return "or";
        case BinaryOp::And: return "and";
        case BinaryOp::Eq: return "=";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Mod: return "%";
        case BinaryOp::Concat: return "||";
        case BinaryOp::Like: return "like";
    }
    return "?";
}

std::string quote_string(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "''";
        else out.push_back(c);
    }
    out += "'";
    return out;
}

void print_select(std::ostringstream& out, const SelectStmt& stmt);

void print_expr(std::ostringstream& out, const Expr& e, int min_level) {
    bool parens = level_of(e) < min_level;
    if (parens) out << "(";
    switch (e.kind) {
        case Expr::Kind::IntLit: out << e.int_value; break;
        case Expr::Kind::FloatLit: out << e.text; break;
        case Expr::Kind::StringLit: out << quote_string(e.text); break;
        case Expr::Kind::NullLit: out << "null"; break;
        case Expr::Kind::Star:
            if (!e.qualifier.empty()) out << e.qualifier << ".";
            out << "*";
            break;
        case Expr::Kind::ColumnRef:
            if (!e.qualifier.empty()) out << e.qualifier << ".";
            out << e.name;
            break;
        case Expr::Kind::Unary:
            if (e.un_op == UnaryOp::Not) {
                out << "not ";
                print_expr(out, *e.args[0], 3);
            } else {
                out << "-";
                print_expr(out, *e.args[0], 7);
            }
            break;
        case Expr::Kind::Binary: {
            int lvl = level_of(e);
            print_expr(out, *e.args[0], lvl);
            if (e.bin_op == BinaryOp::Like && e.negated) {
                out << " not like ";
            } else {
                out << " " << binary_op_text(e.bin_op) << " ";
            }
            print_expr(out, *e.args[1], lvl + 1);
            break;
        }
        case Expr::Kind::FuncCall:
            out << e.name << "(";
            if (e.func_distinct) out << "distinct ";
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) out << ", ";
                print_expr(out, *e.args[i], 1);
            }
            out << ")";
            break;
        case Expr::Kind::FuncVqa:
            out << "func_vqa(" << quote_string(e.text) << ", ";
            print_expr(out, *e.args[0], 1);
            out << ")";
            break;
        case Expr::Kind::InList:
            print_expr(out, *e.args[0], 5);
            out << (e.negated ? " not in (" : " in (");
            for (std::size_t i = 1; i < e.args.size(); ++i) {
                if (i > 1) out << ", ";
                print_expr(out, *e.args[i], 1);
            }
            out << ")";
            break;
        case Expr::Kind::InSubquery:
            print_expr(out, *e.args[0], 5);
            out << (e.negated ? " not in (" : " in (");
            print_select(out, *e.subquery);
            out << ")";
            break;
        case Expr::Kind::Between:
            print_expr(out, *e.args[0], 5);
            out << (e.negated ? " not between " : " between ");
            print_expr(out, *e.args[1], 5);
            out << " and ";
            print_expr(out, *e.args[2], 5);
            break;
        case Expr::Kind::IsNull:
            print_expr(out, *e.args[0], 5);
            out << (e.negated ? " is not null" : " is null");
            break;
        case Expr::Kind::Exists:
            out << "exists (";
            print_select(out, *e.subquery);
            out << ")";
            break;
        case Expr::Kind::Case:
            out << "case";
            if (e.case_operand) {
                out << " ";
                print_expr(out, *e.case_operand, 1);
            }
            for (std::size_t i = 0; i < e.case_when.size(); ++i) {
                out << " when ";
                print_expr(out, *e.case_when[i], 1);
                out << " then ";
                print_expr(out, *e.case_then[i], 1);
            }
            if (e.case_else) {
                out << " else ";
                print_expr(out, *e.case_else, 1);
            }
            out << " end";
            break;
        case Expr::Kind::Subquery:
            out << "(";
            print_select(out, *e.subquery);
            out << ")";
            break;
    }
    if (parens) out << ")";
}

void print_core(std::ostringstream& out, const SelectCore& core) {
    out << "select ";
    if (core.distinct) out << "distinct ";
    for (std::size_t i = 0; i < core.items.size(); ++i) {
        if (i) out << ", ";
        print_expr(out, *core.items[i].expr, 1);
        if (!core.items[i].alias.empty()) out << " as " << core.items[i].alias;
    }
    if (!core.from.empty()) {
        out << " from ";
        for (std::size_t i = 0; i < core.from.size(); ++i) {
            const FromItem& f = core.from[i];
            if (i) {
                switch (f.join) {
                    case FromItem::Join::Comma: out << ", "; break;
                    case FromItem::Join::Inner: out << " join "; break;
                    case FromItem::Join::Left: out << " left join "; break;
                    case FromItem::Join::Cross: out << " cross join "; break;
                    case FromItem::Join::None: out << ", "; break;
                }
            }
            if (f.kind == FromItem::Kind::Subquery) {
                out << "(";
                print_select(out, *f.subquery);
                out << ") as " << f.alias;
            } else {
                out << f.table;
                if (!f.alias.empty()) out << " as " << f.alias;
            }
            if (f.join_condition) {
                out << " on ";
                print_expr(out, *f.join_condition, 1);
            }
        }
    }
    if (core.where) {
        out << " where ";
        print_expr(out, *core.where, 1);
    }
    if (!core.group_by.empty()) {
        out << " group by ";
        for (std::size_t i = 0; i < core.group_by.size(); ++i) {
            if (i) out << ", ";
            print_expr(out, *core.group_by[i], 1);
        }
    }
    if (core.having) {
        out << " having ";
        print_expr(out, *core.having, 1);
    }
}

void print_select(std::ostringstream& out, const SelectStmt& stmt) {
    for (std::size_t i = 0; i < stmt.cores.size(); ++i) {
        if (i) {
            switch (stmt.ops[i - 1]) {
                case SetOp::Union: out << " union "; break;
                case SetOp::UnionAll: out << " union all "; break;
                case SetOp::Intersect: out << " intersect "; break;
                case SetOp::Except: out << " except "; break;
            }
        }
        print_core(out, stmt.cores[i]);
    }
    if (!stmt.order_by.empty()) {
        out << " order by ";
        for (std::size_t i = 0; i < stmt.order_by.size(); ++i) {
            if (i) out << ", ";
            print_expr(out, *stmt.order_by[i].expr, 1);
            if (stmt.order_by[i].desc) out << " desc";
        }
    }
    if (stmt.limit) {
        out << " limit ";
        print_expr(out, *stmt.limit, 1);
        if (stmt.offset) {
            out << " offset ";
            print_expr(out, *stmt.offset, 1);
        }
    }
}

}  // namespace

std::string print(const SelectStmt& stmt) {
    std::ostringstream out;
    print_select(out, stmt);
    return out.str();
}

std::string print(const Expr& expr) {
    std::ostringstream out;
    print_expr(out, expr, 1);
    return out.str();
}

}  // namespace ehrxqa::nsql
