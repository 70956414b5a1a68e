#include "ehrxqa/nsql/parser.hpp"

#include <cctype>

#include "ehrxqa/errors.hpp"

namespace ehrxqa::nsql {
namespace {

enum class Tok {
    End,
    Ident,
    Keyword,
    Int,
    Float,
    String,
    Punct,  // ( ) , . ;
    Op,     // = != <> < <= > >= + - * / % ||
};

struct Token {
    Tok kind = Tok::End;
    std::string text;  // lowered for ident/keyword; raw content for strings
    int line = 1;
    int col = 1;
};

const char* kKeywords[] = {
    "select", "distinct", "from",   "where", "group",     "by",     "having", "order",
    "asc",    "desc",     "limit",  "offset", "union",    "all",    "intersect", "except",
    "join",   "inner",    "left",   "outer", "cross",     "on",     "as",     "and",
    "or",     "not",      "in",     "between", "like",    "is",     "null",   "exists",
    "case",   "when",     "then",   "else",  "end",
};

bool is_keyword(const std::string& word) {
    for (const char* k : kKeywords) {
        if (word == k) return true;
    }
    return false;
}

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token take() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            bump();
        }
        current_.line = line_;
        current_.col = col_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::End;
            current_.text.clear();
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                word.push_back(
                    static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_]))));
                bump();
            }
            current_.kind = is_keyword(word) ? Tok::Keyword : Tok::Ident;
            current_.text = word;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            bool is_float = false;
            while (pos_ < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                if (text_[pos_] == '.') {
                    if (is_float) break;
                    if (pos_ + 1 >= text_.size() ||
                        !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
                        break;
                    is_float = true;
                }
                num.push_back(text_[pos_]);
                bump();
            }
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                std::size_t save = pos_;
                std::string exp;
                exp.push_back('e');
                bump();
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                    exp.push_back(text_[pos_]);
                    bump();
                }
                if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    while (pos_ < text_.size() &&
                           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                        exp.push_back(text_[pos_]);
                        bump();
                    }
                    num += exp;
                    is_float = true;
                } else {
                    pos_ = save;  // bare 'e' starts an identifier, not an exponent
                }
            }
            current_.kind = is_float ? Tok::Float : Tok::Int;
            current_.text = num;
            return;
        }
        if (c == '\'' || c == '"') {
            char quote = c;
            bump();
            std::string value;
            bool closed = false;
            while (pos_ < text_.size()) {
                char d = text_[pos_];
                if (d == quote) {
                    if (pos_ + 1 < text_.size() && text_[pos_ + 1] == quote) {
                        value.push_back(quote);
                        bump();
                        bump();
                        continue;
                    }
                    bump();
                    closed = true;
                    break;
                }
                value.push_back(d);
                bump();
            }
            if (!closed) fail("unterminated string literal");
            current_.kind = Tok::String;
            current_.text = value;
            return;
        }
        // operators / punctuation
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
        };
        if (two('<', '=') || two('>', '=') || two('!', '=') || two('<', '>') || two('|', '|') ||
            two('=', '=')) {
            current_.kind = Tok::Op;
            current_.text = std::string() + c + text_[pos_ + 1];
            bump();
            bump();
            if (current_.text == "==") current_.text = "=";
            if (current_.text == "<>") current_.text = "!=";
            return;
        }
        if (std::string("=<>+-*/%").find(c) != std::string::npos) {
            current_.kind = Tok::Op;
            current_.text = std::string(1, c);
            bump();
            return;
        }
        if (std::string("(),.;").find(c) != std::string::npos) {
            current_.kind = Tok::Punct;
            current_.text = std::string(1, c);
            bump();
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) {
        raise(ErrorCode::SyntaxError,
              message + " at line " + std::to_string(line_) + ", column " + std::to_string(col_));
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lexer_(text) {}

    SelectPtr parse_statement() {
        SelectPtr stmt = parse_select();
        if (peek().kind == Tok::Punct && peek().text == ";") take();
        if (peek().kind != Tok::End) fail("trailing input after statement");
        return stmt;
    }

  private:
    const Token& peek() const { return lexer_.peek(); }
    Token take() { return lexer_.take(); }

    bool at_keyword(const char* kw) const {
        return peek().kind == Tok::Keyword && peek().text == kw;
    }

    bool accept_keyword(const char* kw) {
        if (at_keyword(kw)) {
            take();
            return true;
        }
        return false;
    }

    void expect_keyword(const char* kw) {
        if (!accept_keyword(kw)) fail(std::string("expected '") + kw + "'");
    }

    bool accept_punct(const char* p) {
        if (peek().kind == Tok::Punct && peek().text == p) {
            take();
            return true;
        }
        return false;
    }

    void expect_punct(const char* p) {
        if (!accept_punct(p)) fail(std::string("expected '") + p + "'");
    }

    [[noreturn]] void fail(const std::string& message) const {
        raise(ErrorCode::SyntaxError,
              message + " at line " + std::to_string(peek().line) + ", column " +
                  std::to_string(peek().col) + (peek().text.empty() ? "" : " near '" + peek().text + "'"));
    }

    SelectPtr parse_select() {
        auto stmt = std::make_unique<SelectStmt>();
        stmt->cores.push_back(parse_core());
        while (at_keyword("union") || at_keyword("intersect") || at_keyword("except")) {
            std::string op = take().text;
            if (op == "union") {
                stmt->ops.push_back(accept_keyword("all") ? SetOp::UnionAll : SetOp::Union);
            } else if (op == "intersect") {
                stmt->ops.push_back(SetOp::Intersect);
            } else {
                stmt->ops.push_back(SetOp::Except);
            }
            stmt->cores.push_back(parse_core());
        }
        if (accept_keyword("order")) {
            expect_keyword("by");
            do {
                OrderItem item;
                item.expr = parse_expr();
                if (accept_keyword("desc")) {
                    item.desc = true;
                } else {
                    accept_keyword("asc");
                }
                stmt->order_by.push_back(std::move(item));
            } while (accept_punct(","));
        }
        if (accept_keyword("limit")) {
            stmt->limit = parse_expr();
            if (accept_keyword("offset")) stmt->offset = parse_expr();
        }
        return stmt;
    }

    SelectCore parse_core() {
        expect_keyword("select");
        SelectCore core;
        core.distinct = accept_keyword("distinct");
        do {
            SelectItem item;
            item.expr = parse_expr();
            if (accept_keyword("as")) {
                if (peek().kind != Tok::Ident) fail("expected alias");
                item.alias = take().text;
            } else if (peek().kind == Tok::Ident) {
                item.alias = take().text;  // bare alias
            }
            core.items.push_back(std::move(item));
        } while (accept_punct(","));
        if (core.items.empty()) fail("empty select list");
        if (accept_keyword("from")) {
            core.from.push_back(parse_from_item());
            core.from.back().join = FromItem::Join::None;
            for (;;) {
                if (accept_punct(",")) {
                    FromItem item = parse_from_item();
                    item.join = FromItem::Join::Comma;
                    core.from.push_back(std::move(item));
                    continue;
                }
                FromItem::Join join = FromItem::Join::None;
                if (at_keyword("join") || at_keyword("inner")) {
                    accept_keyword("inner");
                    expect_keyword("join");
                    join = FromItem::Join::Inner;
                } else if (at_keyword("left")) {
                    take();
                    accept_keyword("outer");
                    expect_keyword("join");
                    join = FromItem::Join::Left;
                } else if (at_keyword("cross")) {
                    take();
                    expect_keyword("join");
                    join = FromItem::Join::Cross;
                } else {
                    break;
                }
                FromItem item = parse_from_item();
                item.join = join;
                if (join == FromItem::Join::Inner || join == FromItem::Join::Left) {
                    expect_keyword("on");
                    item.join_condition = parse_expr();
                }
                core.from.push_back(std::move(item));
            }
        }
        if (accept_keyword("where")) core.where = parse_expr();
        if (accept_keyword("group")) {
            expect_keyword("by");
            do {
                core.group_by.push_back(parse_expr());
            } while (accept_punct(","));
        }
        if (accept_keyword("having")) core.having = parse_expr();
        return core;
    }

    FromItem parse_from_item() {
        FromItem item;
        if (accept_punct("(")) {
            item.kind = FromItem::Kind::Subquery;
            item.subquery = parse_select();
            expect_punct(")");
            accept_keyword("as");
            if (peek().kind != Tok::Ident) fail("expected derived table alias");
            item.alias = take().text;
            return item;
        }
        if (peek().kind != Tok::Ident) fail("expected table name");
        item.kind = FromItem::Kind::TableRef;
        item.table = take().text;
        if (accept_keyword("as")) {
            if (peek().kind != Tok::Ident) fail("expected alias");
            item.alias = take().text;
        } else if (peek().kind == Tok::Ident) {
            item.alias = take().text;
        }
        return item;
    }

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr left = parse_and();
        while (accept_keyword("or")) {
            auto node = Expr::make(Expr::Kind::Binary);
            node->bin_op = BinaryOp::Or;
            node->args.push_back(std::move(left));
            node->args.push_back(parse_and());
            left = std::move(node);
        }
        return left;
    }

    ExprPtr parse_and() {
        ExprPtr left = parse_not();
        while (accept_keyword("and")) {
            auto node = Expr::make(Expr::Kind::Binary);
            node->bin_op = BinaryOp::And;
            node->args.push_back(std::move(left));
            node->args.push_back(parse_not());
            left = std::move(node);
        }
        return left;
    }

    ExprPtr parse_not() {
        if (accept_keyword("not")) {
            auto node = Expr::make(Expr::Kind::Unary);
            node->un_op = UnaryOp::Not;
            node->args.push_back(parse_not());
            return node;
        }
        return parse_predicate();
    }

    ExprPtr parse_predicate() {
        ExprPtr left = parse_additive();
        for (;;) {
            if (peek().kind == Tok::Op) {
                BinaryOp op;
                const std::string& t = peek().text;
                if (t == "=") op = BinaryOp::Eq;
                else if (t == "!=") op = BinaryOp::Ne;
                else if (t == "<") op = BinaryOp::Lt;
                else if (t == "<=") op = BinaryOp::Le;
                else if (t == ">") op = BinaryOp::Gt;
                else if (t == ">=") op = BinaryOp::Ge;
                else break;
                take();
                auto node = Expr::make(Expr::Kind::Binary);
                node->bin_op = op;
                node->args.push_back(std::move(left));
                node->args.push_back(parse_additive());
                left = std::move(node);
                continue;
            }
            bool negated = false;
            if (at_keyword("not")) {
                // lookahead for NOT IN / NOT BETWEEN / NOT LIKE
                take();
                negated = true;
                if (!(at_keyword("in") || at_keyword("between") || at_keyword("like"))) {
                    fail("expected in/between/like after 'not'");
                }
            }
            if (accept_keyword("in")) {
                expect_punct("(");
                if (at_keyword("select")) {
                    auto node = Expr::make(Expr::Kind::InSubquery);
                    node->negated = negated;
                    node->args.push_back(std::move(left));
                    node->subquery = parse_select();
                    expect_punct(")");
                    left = std::move(node);
                } else {
                    auto node = Expr::make(Expr::Kind::InList);
                    node->negated = negated;
                    node->args.push_back(std::move(left));
                    do {
                        node->args.push_back(parse_expr());
                    } while (accept_punct(","));
                    expect_punct(")");
                    left = std::move(node);
                }
                continue;
            }
            if (accept_keyword("between")) {
                auto node = Expr::make(Expr::Kind::Between);
                node->negated = negated;
                node->args.push_back(std::move(left));
                node->args.push_back(parse_additive());
                expect_keyword("and");
                node->args.push_back(parse_additive());
                left = std::move(node);
                continue;
            }
            if (accept_keyword("like")) {
                auto node = Expr::make(Expr::Kind::Binary);
                node->bin_op = BinaryOp::Like;
                node->negated = negated;
                node->args.push_back(std::move(left));
                node->args.push_back(parse_additive());
                left = std::move(node);
                continue;
            }
            if (negated) fail("dangling 'not'");
            if (accept_keyword("is")) {
                auto node = Expr::make(Expr::Kind::IsNull);
                node->negated = accept_keyword("not");
                expect_keyword("null");
                node->args.push_back(std::move(left));
                left = std::move(node);
                continue;
            }
            break;
        }
        return left;
    }

    ExprPtr parse_additive() {
        ExprPtr left = parse_multiplicative();
        for (;;) {
            BinaryOp op;
            if (peek().kind != Tok::Op) break;
            if (peek().text == "+") op = BinaryOp::Add;
            else if (peek().text == "-") op = BinaryOp::Sub;
            else if (peek().text == "||") op = BinaryOp::Concat;
            else break;
            take();
            auto node = Expr::make(Expr::Kind::Binary);
            node->bin_op = op;
            node->args.push_back(std::move(left));
            node->args.push_back(parse_multiplicative());
            left = std::move(node);
        }
        return left;
    }

    ExprPtr parse_multiplicative() {
        ExprPtr left = parse_unary();
        for (;;) {
            BinaryOp op;
            if (peek().kind != Tok::Op) break;
            if (peek().text == "*") op = BinaryOp::Mul;
            else if (peek().text == "/") op = BinaryOp::Div;
            else if (peek().text == "%") op = BinaryOp::Mod;
            else break;
            take();
            auto node = Expr::make(Expr::Kind::Binary);
            node->bin_op = op;
            node->args.push_back(std::move(left));
            node->args.push_back(parse_unary());
            left = std::move(node);
        }
        return left;
    }

    ExprPtr parse_unary() {
        if (peek().kind == Tok::Op && peek().text == "-") {
            take();
            auto node = Expr::make(Expr::Kind::Unary);
            node->un_op = UnaryOp::Neg;
            node->args.push_back(parse_unary());
            return node;
        }
        if (peek().kind == Tok::Op && peek().text == "+") {
            take();
            return parse_unary();
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int: {
                auto node = Expr::make(Expr::Kind::IntLit);
                node->int_value = std::stoll(take().text);
                return node;
            }
            case Tok::Float: {
                auto node = Expr::make(Expr::Kind::FloatLit);
                node->text = take().text;
                return node;
            }
            case Tok::String: {
                auto node = Expr::make(Expr::Kind::StringLit);
                node->text = take().text;
                return node;
            }
            case Tok::Punct:
                if (t.text == "(") {
                    take();
                    if (at_keyword("select")) {
                        auto node = Expr::make(Expr::Kind::Subquery);
                        node->subquery = parse_select();
                        expect_punct(")");
                        return node;
                    }
                    ExprPtr inner = parse_expr();
                    expect_punct(")");
                    return inner;
                }
                break;
            case Tok::Op:
                if (t.text == "*") {
                    take();
                    return Expr::make(Expr::Kind::Star);
                }
                break;
            case Tok::Keyword:
                if (t.text == "null") {
                    take();
                    return Expr::make(Expr::Kind::NullLit);
                }
                if (t.text == "exists") {
                    take();
                    expect_punct("(");
                    if (!at_keyword("select")) fail("expected subquery after exists");
                    auto node = Expr::make(Expr::Kind::Exists);
                    node->subquery = parse_select();
                    expect_punct(")");
                    return node;
                }
                if (t.text == "case") {
                    take();
                    auto node = Expr::make(Expr::Kind::Case);
                    if (!at_keyword("when")) node->case_operand = parse_expr();
                    while (accept_keyword("when")) {
                        node->case_when.push_back(parse_expr());
                        expect_keyword("then");
                        node->case_then.push_back(parse_expr());
                    }
                    if (node->case_when.empty()) fail("case without when");
                    if (accept_keyword("else")) node->case_else = parse_expr();
                    expect_keyword("end");
                    return node;
                }
                break;
            case Tok::Ident: return parse_identifier_expr();
            case Tok::End: break;
        }
        fail("expected expression");
    }

    ExprPtr parse_identifier_expr() {
        Token name = take();
        if (name.text == "func_vqa") return parse_func_vqa();
        if (peek().kind == Tok::Punct && peek().text == "(") {
            take();
            auto node = Expr::make(Expr::Kind::FuncCall);
            node->name = name.text;
            if (peek().kind == Tok::Punct && peek().text == ")") {
                take();
                return node;
            }
            node->func_distinct = accept_keyword("distinct");
            do {
                if (peek().kind == Tok::Op && peek().text == "*") {
                    take();
                    node->args.push_back(Expr::make(Expr::Kind::Star));
                } else {
                    node->args.push_back(parse_expr());
                }
            } while (accept_punct(","));
            expect_punct(")");
            return node;
        }
        auto node = Expr::make(Expr::Kind::ColumnRef);
        node->name = name.text;
        if (peek().kind == Tok::Punct && peek().text == ".") {
            take();
            if (peek().kind == Tok::Op && peek().text == "*") {
                take();
                auto star = Expr::make(Expr::Kind::Star);
                star->qualifier = name.text;
                return star;
            }
            if (peek().kind != Tok::Ident) fail("expected column name after '.'");
            node->qualifier = name.text;
            node->name = take().text;
        }
        return node;
    }

    ExprPtr parse_func_vqa() {
        expect_punct("(");
        std::vector<ExprPtr> args;
        if (!(peek().kind == Tok::Punct && peek().text == ")")) {
            do {
                args.push_back(parse_expr());
            } while (accept_punct(","));
        }
        expect_punct(")");
        if (args.size() != 2) {
            raise(ErrorCode::ArityError,
                  "func_vqa takes exactly 2 arguments, got " + std::to_string(args.size()));
        }
        if (args[0]->kind != Expr::Kind::StringLit) {
            raise(ErrorCode::SyntaxError, "func_vqa sub-question must be a string literal");
        }
        if (args[0]->text.empty()) {
            raise(ErrorCode::SyntaxError, "func_vqa sub-question must be non-empty");
        }
        auto node = Expr::make(Expr::Kind::FuncVqa);
        node->text = args[0]->text;
        node->args.push_back(std::move(args[1]));
        return node;
    }

    Lexer lexer_;
};

}  // namespace

SelectPtr parse(const std::string& text) {
    Parser parser(text);
    return parser.parse_statement();
}

std::string normalize_lf(const std::string& text) { return print(*parse(text)); }

}  // namespace ehrxqa::nsql
