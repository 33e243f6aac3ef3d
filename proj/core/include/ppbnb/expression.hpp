/**
 * @file expression.hpp
 * @brief Arithmetic expressions over decision variables x1..xn.
 *
 * Grammar: numbers, variables `x1`..`xn`, constants `pi` and `e`, binary
 * `+ - * / ^`, unary minus, parentheses and the functions
 * sqrt exp log sin cos tan abs pow(a,b) min(a,b) max(a,b).
 * `^` is right associative and binds tighter than unary minus.
 */
#ifndef PPBNB_EXPRESSION_HPP
#define PPBNB_EXPRESSION_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ppbnb {

class Expression {
public:
    /// Parses `source`; throws ConfigError with the offending position on failure
    /// or when a variable index exceeds `variable_count`.
    Expression(std::string source, std::size_t variable_count);

    double evaluate(std::span<const double> x) const;
    const std::string& source() const noexcept { return source_; }

    struct Instruction {
        enum class Op { Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call1, Call2 };
        Op op;
        double value = 0.0;
        std::size_t index = 0;  // variable index or function id
    };

private:
    std::string source_;
    std::vector<Instruction> program_;  // postfix
};

}  // namespace ppbnb

#endif  // PPBNB_EXPRESSION_HPP
