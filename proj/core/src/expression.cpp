#include "ppbnb/expression.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string_view>

#include "ppbnb/errors.hpp"

namespace ppbnb {

namespace {

using Op = Expression::Instruction::Op;

constexpr std::array<std::string_view, 7> kUnary = {"sqrt", "exp", "log", "sin", "cos", "tan", "abs"};
constexpr std::array<std::string_view, 3> kBinary = {"pow", "min", "max"};

double call_unary(std::size_t id, double a) {
    switch (id) {
        case 0: return std::sqrt(a);
        case 1: return std::exp(a);
        case 2: return std::log(a);
        case 3: return std::sin(a);
        case 4: return std::cos(a);
        case 5: return std::tan(a);
        default: return std::fabs(a);
    }
}

double call_binary(std::size_t id, double a, double b) {
    switch (id) {
        case 0: return std::pow(a, b);
        case 1: return std::fmin(a, b);
        default: return std::fmax(a, b);
    }
}

class Parser {
public:
    Parser(std::string_view text, std::size_t variables, std::vector<Expression::Instruction>& out)
        : text_(text), variables_(variables), out_(out) {}

    void parse() {
        expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input");
    }

private:
    void expression() {
        term();
        for (;;) {
            skip_space();
            if (accept('+')) {
                term();
                emit(Op::Add);
            } else if (accept('-')) {
                term();
                emit(Op::Sub);
            } else {
                return;
            }
        }
    }

    void term() {
        unary();
        for (;;) {
            skip_space();
            if (accept('*')) {
                unary();
                emit(Op::Mul);
            } else if (accept('/')) {
                unary();
                emit(Op::Div);
            } else {
                return;
            }
        }
    }

    void unary() {
        skip_space();
        if (accept('-')) {
            unary();
            emit(Op::Negate);
            return;
        }
        if (accept('+')) {
            unary();
            return;
        }
        power();
    }

    void power() {
        primary();
        skip_space();
        if (accept('^')) {
            unary();  // right associative, allows 2^-1
            emit(Op::Pow);
        }
    }

    void primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (accept('(')) {
            expression();
            expect(')');
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            identifier();
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    void number() {
        const char* begin = text_.data() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        out_.push_back({Op::Constant, v, 0});
    }

    void identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = text_.substr(start, pos_ - start);

        if (name == "pi") {
            out_.push_back({Op::Constant, M_PI, 0});
            return;
        }
        if (name == "e") {
            out_.push_back({Op::Constant, M_E, 0});
            return;
        }
        if (name.size() > 1 && name[0] == 'x' &&
            name.find_first_not_of("0123456789", 1) == std::string_view::npos) {
            const std::size_t index = std::stoul(std::string(name.substr(1)));
            if (index < 1 || index > variables_) {
                fail("variable " + std::string(name) + " out of range 1.." + std::to_string(variables_));
            }
            out_.push_back({Op::Variable, 0.0, index - 1});
            return;
        }
        for (std::size_t id = 0; id < kUnary.size(); ++id) {
            if (name == kUnary[id]) {
                expect('(');
                expression();
                expect(')');
                out_.push_back({Op::Call1, 0.0, id});
                return;
            }
        }
        for (std::size_t id = 0; id < kBinary.size(); ++id) {
            if (name == kBinary[id]) {
                expect('(');
                expression();
                expect(',');
                expression();
                expect(')');
                out_.push_back({Op::Call2, 0.0, id});
                return;
            }
        }
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void emit(Op op) { out_.push_back({op, 0.0, 0}); }

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("expression '" + std::string(text_) + "' at position " +
                          std::to_string(pos_) + ": " + what);
    }

    std::string_view text_;
    std::size_t variables_;
    std::vector<Expression::Instruction>& out_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(std::string source, std::size_t variable_count) : source_(std::move(source)) {
    Parser(source_, variable_count, program_).parse();
}

double Expression::evaluate(std::span<const double> x) const {
    // Postfix programs from the parser never need more than program length slots.
    std::vector<double> stack;
    stack.reserve(program_.size());
    for (const auto& ins : program_) {
        switch (ins.op) {
            case Op::Constant: stack.push_back(ins.value); break;
            case Op::Variable: stack.push_back(x[ins.index]); break;
            case Op::Negate: stack.back() = -stack.back(); break;
            case Op::Call1: stack.back() = call_unary(ins.index, stack.back()); break;
            default: {
                const double b = stack.back();
                stack.pop_back();
                double& a = stack.back();
                switch (ins.op) {
                    case Op::Add: a = a + b; break;
                    case Op::Sub: a = a - b; break;
                    case Op::Mul: a = a * b; break;
                    case Op::Div: a = a / b; break;
                    case Op::Pow: a = std::pow(a, b); break;
                    default: a = call_binary(ins.index, a, b); break;
                }
            }
        }
    }
    return stack.back();
}

}  // namespace ppbnb
