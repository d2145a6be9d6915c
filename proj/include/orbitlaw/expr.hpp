#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbitlaw {

// Symbolic expression trees over constants, input variables and a small
// operation set. Stored flat in postfix order: a subtree is always a
// contiguous slice ending at its root, which keeps structural edits cheap
// and evaluation a single stack pass.

enum class Op : std::uint8_t { Const, Var, Add, Sub, Mul, Div, Cos, Sin, Tan };

inline int op_arity(Op op) {
    switch (op) {
        case Op::Const:
        case Op::Var: return 0;
        case Op::Cos:
        case Op::Sin:
        case Op::Tan: return 1;
        default: return 2;
    }
}

inline const char* op_name(Op op) {
    switch (op) {
        case Op::Const: return "const";
        case Op::Var: return "var";
        case Op::Add: return "add";
        case Op::Sub: return "sub";
        case Op::Mul: return "mul";
        case Op::Div: return "div";
        case Op::Cos: return "cos";
        case Op::Sin: return "sin";
        case Op::Tan: return "tan";
    }
    return "?";
}

// Per-node complexity costs. The defaults reproduce the published size
// accounting: leaves and the cheap arithmetic cost 1, division 2, named
// functions 4.
struct SizeRule {
    int constant = 1;
    int variable = 1;
    int add = 1;
    int sub = 1;
    int mul = 1;
    int div = 2;
    int function = 4;

    int cost(Op op) const {
        switch (op) {
            case Op::Const: return constant;
            case Op::Var: return variable;
            case Op::Add: return add;
            case Op::Sub: return sub;
            case Op::Mul: return mul;
            case Op::Div: return div;
            default: return function;
        }
    }
};

struct ExprNode {
    Op op = Op::Const;
    std::int32_t var = 0;   // variable index when op == Var
    double value = 0.0;     // constant value when op == Const

    bool operator==(const ExprNode& other) const {
        if (op != other.op) return false;
        if (op == Op::Var) return var == other.var;
        if (op == Op::Const)
            return value == other.value || (std::isnan(value) && std::isnan(other.value));
        return true;
    }
};

// Division by anything this close to zero is a domain fault; the evaluator
// reports it as NaN instead of producing a misleading huge value.
inline constexpr double kDivEpsilon = 1e-300;

class Expression {
  public:
    Expression() { nodes_.push_back({Op::Const, 0, 0.0}); }

    static Expression constant(double v) {
        Expression e;
        e.nodes_ = {{Op::Const, 0, v}};
        return e;
    }

    static Expression variable(int index) {
        if (index < 0) throw std::invalid_argument("expression: negative variable index");
        Expression e;
        e.nodes_ = {{Op::Var, index, 0.0}};
        return e;
    }

    static Expression unary(Op op, Expression arg) {
        if (op_arity(op) != 1) throw std::invalid_argument("expression: not a unary op");
        Expression e = std::move(arg);
        e.nodes_.push_back({op, 0, 0.0});
        return e;
    }

    static Expression binary(Op op, Expression lhs, Expression rhs) {
        if (op_arity(op) != 2) throw std::invalid_argument("expression: not a binary op");
        Expression e = std::move(lhs);
        e.nodes_.insert(e.nodes_.end(), rhs.nodes_.begin(), rhs.nodes_.end());
        e.nodes_.push_back({op, 0, 0.0});
        return e;
    }

    static Expression from_postfix(std::vector<ExprNode> nodes) {
        Expression e;
        e.nodes_ = std::move(nodes);
        if (!e.well_formed()) throw std::invalid_argument("expression: malformed postfix");
        return e;
    }

    const std::vector<ExprNode>& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }

    bool operator==(const Expression& other) const { return nodes_ == other.nodes_; }

    int size(const SizeRule& rule = {}) const {
        int total = 0;
        for (const ExprNode& n : nodes_) total += rule.cost(n.op);
        return total;
    }

    int max_variable_index() const {
        int mx = -1;
        for (const ExprNode& n : nodes_)
            if (n.op == Op::Var && n.var > mx) mx = n.var;
        return mx;
    }

    // Start of the slice holding the subtree rooted at node i.
    std::size_t subtree_begin(std::size_t i) const {
        std::size_t need = 1;
        std::size_t j = i + 1;
        while (need > 0) {
            --j;
            need += static_cast<std::size_t>(op_arity(nodes_[j].op));
            --need;
            if (need == 0) break;
        }
        return j;
    }

    // Scalar evaluation. Domain faults (division by ~0, overflow inside a
    // function) propagate as NaN so searches can score them as unusable
    // rather than aborting.
    double evaluate(std::span<const double> vars) const {
        const int mx = max_variable_index();
        if (mx >= static_cast<int>(vars.size()))
            throw std::out_of_range("expression: unbound variable x" + std::to_string(mx));
        double stack[kMaxDepth];
        int top = -1;
        for (const ExprNode& n : nodes_) {
            switch (n.op) {
                case Op::Const: stack[++top] = n.value; break;
                case Op::Var: stack[++top] = vars[static_cast<std::size_t>(n.var)]; break;
                case Op::Add: --top; stack[top] += stack[top + 1]; break;
                case Op::Sub: --top; stack[top] -= stack[top + 1]; break;
                case Op::Mul: --top; stack[top] *= stack[top + 1]; break;
                case Op::Div: {
                    --top;
                    const double den = stack[top + 1];
                    stack[top] = std::abs(den) < kDivEpsilon
                                     ? std::numeric_limits<double>::quiet_NaN()
                                     : stack[top] / den;
                    break;
                }
                case Op::Cos: stack[top] = std::cos(stack[top]); break;
                case Op::Sin: stack[top] = std::sin(stack[top]); break;
                case Op::Tan: stack[top] = std::tan(stack[top]); break;
            }
        }
        return stack[0];
    }

    // Evaluates the expression over whole columns at once; the hot path of
    // the annealing search. scratch is reused between calls.
    void evaluate_batch(const std::vector<std::vector<double>>& columns, std::size_t rows,
                        std::vector<double>& out, std::vector<double>& scratch) const {
        const int mx = max_variable_index();
        if (mx >= static_cast<int>(columns.size()))
            throw std::out_of_range("expression: unbound variable x" + std::to_string(mx));
        const std::size_t depth = stack_depth();
        if (scratch.size() < depth * rows) scratch.resize(depth * rows);
        std::size_t top = 0;
        auto slab = [&](std::size_t level) { return scratch.data() + level * rows; };
        for (const ExprNode& n : nodes_) {
            switch (n.op) {
                case Op::Const: {
                    double* s = slab(top++);
                    for (std::size_t i = 0; i < rows; ++i) s[i] = n.value;
                    break;
                }
                case Op::Var: {
                    const double* src = columns[static_cast<std::size_t>(n.var)].data();
                    double* s = slab(top++);
                    for (std::size_t i = 0; i < rows; ++i) s[i] = src[i];
                    break;
                }
                case Op::Add: {
                    double* a = slab(top - 2);
                    const double* b = slab(top - 1);
                    for (std::size_t i = 0; i < rows; ++i) a[i] += b[i];
                    --top;
                    break;
                }
                case Op::Sub: {
                    double* a = slab(top - 2);
                    const double* b = slab(top - 1);
                    for (std::size_t i = 0; i < rows; ++i) a[i] -= b[i];
                    --top;
                    break;
                }
                case Op::Mul: {
                    double* a = slab(top - 2);
                    const double* b = slab(top - 1);
                    for (std::size_t i = 0; i < rows; ++i) a[i] *= b[i];
                    --top;
                    break;
                }
                case Op::Div: {
                    double* a = slab(top - 2);
                    const double* b = slab(top - 1);
                    for (std::size_t i = 0; i < rows; ++i)
                        a[i] = std::abs(b[i]) < kDivEpsilon
                                   ? std::numeric_limits<double>::quiet_NaN()
                                   : a[i] / b[i];
                    --top;
                    break;
                }
                case Op::Cos: {
                    double* a = slab(top - 1);
                    for (std::size_t i = 0; i < rows; ++i) a[i] = std::cos(a[i]);
                    break;
                }
                case Op::Sin: {
                    double* a = slab(top - 1);
                    for (std::size_t i = 0; i < rows; ++i) a[i] = std::sin(a[i]);
                    break;
                }
                case Op::Tan: {
                    double* a = slab(top - 1);
                    for (std::size_t i = 0; i < rows; ++i) a[i] = std::tan(a[i]);
                    break;
                }
            }
        }
        out.assign(slab(0), slab(0) + rows);
    }

    // Replaces every variable-free subtree whose value is finite by a single
    // constant. No algebraic identities are applied; faulted subtrees stay
    // unfolded so evaluation semantics are unchanged wherever they were
    // finite.
    Expression fold_constants() const {
        struct Frame {
            bool is_const = false;
            double value = 0.0;
            std::vector<ExprNode> nodes;
        };
        std::vector<Frame> stack;
        for (const ExprNode& n : nodes_) {
            const int arity = op_arity(n.op);
            if (arity == 0) {
                Frame f;
                f.is_const = n.op == Op::Const;
                f.value = n.value;
                f.nodes = {n};
                stack.push_back(std::move(f));
                continue;
            }
            Frame rhs;
            Frame lhs;
            if (arity == 2) {
                rhs = std::move(stack.back());
                stack.pop_back();
            }
            lhs = std::move(stack.back());
            stack.pop_back();

            Frame merged;
            if (lhs.is_const && (arity == 1 || rhs.is_const)) {
                double v = std::numeric_limits<double>::quiet_NaN();
                switch (n.op) {
                    case Op::Add: v = lhs.value + rhs.value; break;
                    case Op::Sub: v = lhs.value - rhs.value; break;
                    case Op::Mul: v = lhs.value * rhs.value; break;
                    case Op::Div:
                        if (std::abs(rhs.value) >= kDivEpsilon) v = lhs.value / rhs.value;
                        break;
                    case Op::Cos: v = std::cos(lhs.value); break;
                    case Op::Sin: v = std::sin(lhs.value); break;
                    case Op::Tan: v = std::tan(lhs.value); break;
                    default: break;
                }
                if (std::isfinite(v)) {
                    merged.is_const = true;
                    merged.value = v;
                    merged.nodes = {{Op::Const, 0, v}};
                    stack.push_back(std::move(merged));
                    continue;
                }
            }
            merged.nodes = std::move(lhs.nodes);
            if (arity == 2)
                merged.nodes.insert(merged.nodes.end(), rhs.nodes.begin(), rhs.nodes.end());
            merged.nodes.push_back(n);
            stack.push_back(std::move(merged));
        }
        Expression out;
        out.nodes_ = std::move(stack.back().nodes);
        return out;
    }

    std::size_t stack_depth() const {
        std::size_t depth = 0, top = 0;
        for (const ExprNode& n : nodes_) {
            top -= static_cast<std::size_t>(op_arity(n.op));
            ++top;
            if (top > depth) depth = top;
        }
        return depth;
    }

  private:
    bool well_formed() const {
        if (nodes_.empty() || nodes_.size() > kMaxDepth * 4) return false;
        long stack = 0;
        for (const ExprNode& n : nodes_) {
            stack -= op_arity(n.op);
            if (stack < 0) return false;
            ++stack;
        }
        return stack == 1 && stack_depth() <= kMaxDepth;
    }

    static constexpr std::size_t kMaxDepth = 128;

    std::vector<ExprNode> nodes_;
};

inline bool is_domain_fault(double v) { return !std::isfinite(v); }

}  // namespace orbitlaw
