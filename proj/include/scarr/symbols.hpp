#ifndef SCARR_SYMBOLS_HPP
#define SCARR_SYMBOLS_HPP

#include "scarr/errors.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scarr {

enum class Parity : unsigned { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>((static_cast<unsigned>(a) + static_cast<unsigned>(b)) & 1u);
}

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

struct CoordinateSymbol {
    std::string name;
    Parity parity = Parity::Even;
    // Coordinates may be declared nonvanishing so they can appear in
    // denominators (e.g. a chart on the punctured line).
    bool nonvanishing = false;

    friend bool operator==(const CoordinateSymbol&, const CoordinateSymbol&) = default;
};

struct FunctionSymbol {
    std::string name;
    std::vector<std::string> depends_on; // even coordinate names, declaration order
    bool nonvanishing = false;

    friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
};

// Name table for one problem instance: coordinates plus opaque function
// symbols. Immutable once a Chart wraps it; solvers extend a copy with
// placeholder symbols.
class SymbolScope {
public:
    void declare_coordinate(CoordinateSymbol c) {
        require_fresh(c.name);
        coordinate_index_[c.name] = coordinates_.size();
        coordinates_.push_back(std::move(c));
    }

    void declare_function(FunctionSymbol f) {
        require_fresh(f.name);
        for (const auto& dep : f.depends_on) {
            const CoordinateSymbol* c = find_coordinate(dep);
            if (c == nullptr) throw UnknownSymbol(dep);
            if (c->parity != Parity::Even)
                throw ParityViolation("function symbol " + f.name +
                                      " may only depend on even coordinates, got " + dep);
        }
        function_index_[f.name] = functions_.size();
        functions_.push_back(std::move(f));
    }

    const CoordinateSymbol* find_coordinate(const std::string& name) const {
        auto it = coordinate_index_.find(name);
        return it == coordinate_index_.end() ? nullptr : &coordinates_[it->second];
    }

    const FunctionSymbol* find_function(const std::string& name) const {
        auto it = function_index_.find(name);
        return it == function_index_.end() ? nullptr : &functions_[it->second];
    }

    bool known(const std::string& name) const {
        return find_coordinate(name) != nullptr || find_function(name) != nullptr;
    }

    bool is_nonvanishing_symbol(const std::string& name) const {
        if (const auto* c = find_coordinate(name)) return c->nonvanishing;
        if (const auto* f = find_function(name)) return f->nonvanishing;
        return false;
    }

    // True when the formal partial of symbol `name` by `coord` is
    // identically zero.
    bool partial_vanishes(const std::string& name, const std::string& coord) const {
        if (const auto* c = find_coordinate(name)) return c->name != coord;
        if (const auto* f = find_function(name)) {
            for (const auto& dep : f->depends_on)
                if (dep == coord) return false;
            return true;
        }
        throw UnknownSymbol(name);
    }

    const std::vector<CoordinateSymbol>& coordinates() const { return coordinates_; }
    const std::vector<FunctionSymbol>& functions() const { return functions_; }

private:
    void require_fresh(const std::string& name) const {
        if (known(name))
            throw Error("symbol declared twice: " + name);
    }

    std::vector<CoordinateSymbol> coordinates_;
    std::vector<FunctionSymbol> functions_;
    std::map<std::string, std::size_t> coordinate_index_;
    std::map<std::string, std::size_t> function_index_;
};

} // namespace scarr

#endif
