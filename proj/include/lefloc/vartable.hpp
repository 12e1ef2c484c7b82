#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace lefloc {

// Ordered variable table: user torus variables first, then the two reserved
// formal variables "y" (Hodge grading) and "b" (polynomial Lefschetz grading),
// always last.  Shared immutably by every value built over it.
class VarTable {
public:
    static std::shared_ptr<const VarTable> make(std::vector<std::string> torus_vars) {
        for (const auto& v : torus_vars) {
            if (v == "y" || v == "b")
                throw std::invalid_argument("variable name '" + v + "' is reserved");
            if (v.empty()) throw std::invalid_argument("empty variable name");
            if (std::count(torus_vars.begin(), torus_vars.end(), v) != 1)
                throw std::invalid_argument("duplicate variable name '" + v + "'");
        }
        auto t = std::shared_ptr<VarTable>(new VarTable);
        t->names_ = std::move(torus_vars);
        t->names_.push_back("y");
        t->names_.push_back("b");
        return t;
    }

    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    std::size_t torus_count() const { return names_.size() - 2; }
    std::size_t y_index() const { return names_.size() - 2; }
    std::size_t b_index() const { return names_.size() - 1; }

    std::size_t index(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        throw std::invalid_argument("unknown variable '" + name + "'");
    }
    bool has(const std::string& name) const {
        return std::find(names_.begin(), names_.end(), name) != names_.end();
    }

private:
    VarTable() = default;
    std::vector<std::string> names_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline bool same_table(const VarTablePtr& a, const VarTablePtr& b) {
    return a == b || (a && b && a->names() == b->names());
}

inline void require_same_table(const VarTablePtr& a, const VarTablePtr& b) {
    if (!same_table(a, b)) throw std::invalid_argument("variable table mismatch");
}

}  // namespace lefloc
