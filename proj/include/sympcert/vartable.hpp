#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sympcert {

// The fixed global variable table. Ranking (most significant first):
//   X11..X44                    -- the 16 matrix variables, row-major
//   a11..a22, b11..b22, c11..c22, d11..d22, f11..f22, e11..e22,
//   a0,b0,c0, aS,bS,cS, d1      -- the 31 geometric parameters
//   t                           -- auxiliary symbol for saturation
//   p,q,r,n                     -- family symbols
// Parameters rank strictly below every matrix variable, so they behave as
// coefficients during division by bases generated over the X's.
inline constexpr std::size_t kNumMainVars = 16;
inline constexpr std::size_t kNumParamVars = 31;
inline constexpr std::size_t kTableSize = 52;

class VariableTable {
  public:
    static const VariableTable& instance() {
        static const VariableTable table;
        return table;
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t id) const { return names_[id]; }

    bool contains(std::string_view symbol) const {
        return ids_.find(std::string(symbol)) != ids_.end();
    }

    std::size_t id(std::string_view symbol) const {
        auto it = ids_.find(std::string(symbol));
        if (it == ids_.end())
            throw std::invalid_argument("unknown symbol: '" + std::string(symbol) + "'");
        return it->second;
    }

    static bool is_main(std::size_t id) { return id < kNumMainVars; }
    static bool is_param(std::size_t id) {
        return id >= kNumMainVars && id < kNumMainVars + kNumParamVars;
    }

    // X variable id from 1-based matrix position.
    static std::size_t x_id(int row, int col) {
        if (row < 1 || row > 4 || col < 1 || col > 4)
            throw std::out_of_range("matrix index out of range");
        return static_cast<std::size_t>((row - 1) * 4 + (col - 1));
    }

    const std::vector<std::string>& names() const { return names_; }

  private:
    VariableTable() {
        names_.reserve(kTableSize);
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                names_.push_back("X" + std::to_string(i) + std::to_string(j));
        for (const char* block : {"a", "b", "c", "d", "f", "e"})
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 2; ++j)
                    names_.push_back(std::string(block) + std::to_string(i) + std::to_string(j));
        for (const char* s : {"a0", "b0", "c0", "aS", "bS", "cS", "d1", "t", "p", "q", "r", "n"})
            names_.push_back(s);
        if (names_.size() != kTableSize)
            throw std::logic_error("variable table size mismatch");
        for (std::size_t i = 0; i < names_.size(); ++i) ids_.emplace(names_[i], i);
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> ids_;
};

inline std::size_t var_id(std::string_view symbol) { return VariableTable::instance().id(symbol); }
inline const std::string& var_name(std::size_t id) { return VariableTable::instance().name(id); }

}  // namespace sympcert
