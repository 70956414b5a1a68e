#include "ehrxqa/nsql/validator.hpp"

#include <algorithm>

#include "ehrxqa/errors.hpp"

namespace ehrxqa::nsql {
namespace {

struct SourceColumn {
    std::string base_table;   // physical table, empty for computed columns
    std::string base_column;  // physical column name
};

struct Scope {
    struct Item {
        std::string alias;  // visible name (alias or table name)
        std::vector<std::string> columns;
        std::map<std::string, SourceColumn> origins;  // column -> physical source
    };
    std::vector<Item> items;
    const Scope* parent = nullptr;

    const Item* find_alias(const std::string& alias) const {
        for (const auto& item : items) {
            if (item.alias == alias) return &item;
        }
        return parent ? parent->find_alias(alias) : nullptr;
    }
};

enum class Position { Scalar, SelectItem, InRhs };

class Validator {
  public:
    Validator(const SqlSchema& schema, const VqaClassifier& classify)
        : schema_(schema), classify_(classify) {}

    std::vector<std::string> check_select(const SelectStmt& stmt, const Scope* parent) {
        std::vector<std::string> output;
        for (std::size_t i = 0; i < stmt.cores.size(); ++i) {
            auto cols = check_core(stmt.cores[i], parent);
            if (i == 0) {
                output = cols;
            } else if (cols.size() != output.size()) {
                raise(ErrorCode::SqlSyntaxError, "set operation arms differ in width");
            }
        }
        // ORDER BY / LIMIT resolve against the first core's scope; rebuild it.
        if (!stmt.order_by.empty() || stmt.limit) {
            Scope scope = build_scope(stmt.cores[0], parent);
            for (const auto& o : stmt.order_by) check_expr(*o.expr, scope, Position::Scalar);
            if (stmt.limit) check_expr(*stmt.limit, scope, Position::Scalar);
            if (stmt.offset) check_expr(*stmt.offset, scope, Position::Scalar);
        }
        return output;
    }

  private:
    Scope build_scope(const SelectCore& core, const Scope* parent) {
        Scope scope;
        scope.parent = parent;
        for (const auto& f : core.from) {
            Scope::Item item;
            if (f.kind == FromItem::Kind::TableRef) {
                auto it = schema_.find(f.table);
                if (it == schema_.end()) raise(ErrorCode::UnknownTable, f.table);
                item.alias = f.alias.empty() ? f.table : f.alias;
                item.columns = it->second;
                for (const auto& c : item.columns) item.origins[c] = {f.table, c};
            } else {
                item.alias = f.alias;
                item.columns = derived_columns(*f.subquery, parent, &item.origins);
            }
            scope.items.push_back(std::move(item));
        }
        return scope;
    }

    std::vector<std::string> derived_columns(const SelectStmt& sub, const Scope* parent,
                                             std::map<std::string, SourceColumn>* origins) {
        // Validate the subquery in its own right, then expose its items.
        check_select(sub, parent);
        Scope inner = build_scope(sub.cores[0], parent);
        std::vector<std::string> cols;
        int anon = 0;
        for (const auto& item : sub.cores[0].items) {
            if (item.expr->kind == Expr::Kind::Star) {
                for (const auto& s : inner.items) {
                    if (!item.expr->qualifier.empty() && s.alias != item.expr->qualifier) continue;
                    for (const auto& c : s.columns) {
                        cols.push_back(c);
                        if (origins) {
                            auto it = s.origins.find(c);
                            (*origins)[c] = it != s.origins.end() ? it->second : SourceColumn{};
                        }
                    }
                }
                continue;
            }
            std::string name;
            if (!item.alias.empty()) {
                name = item.alias;
            } else if (item.expr->kind == Expr::Kind::ColumnRef) {
                name = item.expr->name;
            } else {
                name = "c" + std::to_string(anon++);
            }
            cols.push_back(name);
            if (origins) {
                SourceColumn src;
                if (item.expr->kind == Expr::Kind::ColumnRef) {
                    src = resolve_origin(*item.expr, inner);
                }
                (*origins)[name] = src;
            }
        }
        return cols;
    }

    SourceColumn resolve_origin(const Expr& ref, const Scope& scope) {
        const Scope::Item* item = nullptr;
        if (!ref.qualifier.empty()) {
            item = scope.find_alias(ref.qualifier);
        } else {
            for (const auto& s : scope.items) {
                if (std::find(s.columns.begin(), s.columns.end(), ref.name) != s.columns.end()) {
                    item = &s;
                    break;
                }
            }
            if (!item && scope.parent) return resolve_origin(ref, *scope.parent);
        }
        if (!item) return {};
        auto it = item->origins.find(ref.name);
        return it != item->origins.end() ? it->second : SourceColumn{};
    }

    std::vector<std::string> check_core(const SelectCore& core, const Scope* parent) {
        Scope scope = build_scope(core, parent);
        for (const auto& f : core.from) {
            if (f.join_condition) check_expr(*f.join_condition, scope, Position::Scalar);
        }
        std::vector<std::string> output;
        for (const auto& item : core.items) {
            if (item.expr->kind == Expr::Kind::Star) {
                for (const auto& s : scope.items) {
                    if (!item.expr->qualifier.empty() && s.alias != item.expr->qualifier) continue;
                    for (const auto& c : s.columns) output.push_back(c);
                }
                if (!item.expr->qualifier.empty() && !scope.find_alias(item.expr->qualifier)) {
                    raise(ErrorCode::UnknownTable, item.expr->qualifier);
                }
                continue;
            }
            check_expr(*item.expr, scope, Position::SelectItem);
            output.push_back(!item.alias.empty()
                                 ? item.alias
                                 : (item.expr->kind == Expr::Kind::ColumnRef ? item.expr->name
                                                                             : "expr"));
        }
        if (core.where) check_expr(*core.where, scope, Position::Scalar);
        for (const auto& g : core.group_by) check_expr(*g, scope, Position::Scalar);
        if (core.having) check_expr(*core.having, scope, Position::Scalar);
        return output;
    }

    void check_column(const Expr& ref, const Scope& scope) {
        if (!ref.qualifier.empty()) {
            const Scope::Item* item = scope.find_alias(ref.qualifier);
            if (!item) raise(ErrorCode::UnknownTable, ref.qualifier);
            if (std::find(item->columns.begin(), item->columns.end(), ref.name) ==
                item->columns.end()) {
                raise(ErrorCode::UnknownColumn, ref.qualifier + "." + ref.name);
            }
            return;
        }
        const Scope* s = &scope;
        while (s) {
            int hits = 0;
            for (const auto& item : s->items) {
                if (std::find(item.columns.begin(), item.columns.end(), ref.name) !=
                    item.columns.end()) {
                    ++hits;
                }
            }
            if (hits == 1) return;
            if (hits > 1) raise(ErrorCode::UnknownColumn, "ambiguous column " + ref.name);
            s = s->parent;
        }
        raise(ErrorCode::UnknownColumn, ref.name);
    }

    void check_image_ref(const Expr& ref, const Scope& scope) {
        if (ref.kind != Expr::Kind::ColumnRef) {
            raise(ErrorCode::BadImageRef, "image reference must be a column");
        }
        check_column(ref, scope);
        SourceColumn src = resolve_origin(ref, scope);
        if (src.base_table != "tb_cxr" || src.base_column != "study_id") {
            raise(ErrorCode::BadImageRef,
                  "image reference must resolve to tb_cxr.study_id, got " +
                      (src.base_table.empty() ? std::string("<computed>")
                                              : src.base_table + "." + src.base_column));
        }
    }

    void check_expr(const Expr& e, const Scope& scope, Position pos) {
        switch (e.kind) {
            case Expr::Kind::ColumnRef: check_column(e, scope); return;
            case Expr::Kind::FuncVqa: {
                check_image_ref(*e.args[0], scope);
                if (classify_) {
                    VqaShape shape = classify_(e.text);
                    if (shape == VqaShape::Set && pos == Position::Scalar) {
                        raise(ErrorCode::ContextMismatch,
                              "list-valued sub-question in scalar context: " + e.text);
                    }
                    if (shape == VqaShape::Scalar && pos == Position::InRhs) {
                        raise(ErrorCode::ContextMismatch,
                              "scalar sub-question in set context: " + e.text);
                    }
                }
                return;
            }
            case Expr::Kind::InList:
                check_expr(*e.args[0], scope, Position::Scalar);
                for (std::size_t i = 1; i < e.args.size(); ++i) {
                    check_expr(*e.args[i], scope, Position::InRhs);
                }
                return;
            case Expr::Kind::InSubquery:
                check_expr(*e.args[0], scope, Position::Scalar);
                check_select(*e.subquery, &scope);
                return;
            case Expr::Kind::Exists:
            case Expr::Kind::Subquery: check_select(*e.subquery, &scope); return;
            case Expr::Kind::Case:
                if (e.case_operand) check_expr(*e.case_operand, scope, Position::Scalar);
                for (const auto& w : e.case_when) check_expr(*w, scope, Position::Scalar);
                for (const auto& t : e.case_then) check_expr(*t, scope, Position::Scalar);
                if (e.case_else) check_expr(*e.case_else, scope, Position::Scalar);
                return;
            case Expr::Kind::Star: return;
            default: break;
        }
        for (const auto& a : e.args) {
            if (a) check_expr(*a, scope, Position::Scalar);
        }
    }

    const SqlSchema& schema_;
    const VqaClassifier& classify_;
};

}  // namespace

void validate(const SelectStmt& stmt, const SqlSchema& schema, const VqaClassifier& classify) {
    Validator validator(schema, classify);
    validator.check_select(stmt, nullptr);
}

}  // namespace ehrxqa::nsql
