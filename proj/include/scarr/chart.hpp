#ifndef SCARR_CHART_HPP
#define SCARR_CHART_HPP

#include "scarr/symbols.hpp"

#include <memory>
#include <string>
#include <vector>

namespace scarr {

// A single global coordinate chart: ordered even coordinates, then ordered
// odd coordinates, plus the declared function symbols. Immutable and
// cheaply copyable; solvers derive extended charts sharing the coordinate
// block, and values on such charts interoperate.
class Chart {
public:
    Chart(std::vector<CoordinateSymbol> even,
          std::vector<CoordinateSymbol> odd,
          std::vector<FunctionSymbol> functions = {});

    std::size_t even_count() const { return data_->even_count; }
    std::size_t odd_count() const { return data_->odd_count; }
    std::size_t coordinate_count() const { return data_->even_count + data_->odd_count; }

    // Chart order: even coordinates first, then odd.
    const CoordinateSymbol& coordinate(std::size_t i) const {
        return data_->scope.coordinates()[i];
    }
    Parity coordinate_parity(std::size_t i) const { return coordinate(i).parity; }
    bool is_odd_index(std::size_t i) const { return i >= even_count(); }
    // Position of an odd coordinate within the odd block.
    std::size_t odd_position(std::size_t i) const { return i - even_count(); }

    std::optional<std::size_t> coordinate_index(const std::string& name) const;

    const SymbolScope& scope() const { return data_->scope; }

    // New chart with the same coordinates plus extra opaque symbols
    // (solver placeholders). Values migrate freely between the two.
    Chart with_extra_functions(const std::vector<FunctionSymbol>& extra) const;

    // Same coordinate block (names, parities, order); function symbols may
    // differ. This is the compatibility predicate for all operations.
    bool same_coordinates(const Chart& other) const;

    bool operator==(const Chart& other) const { return data_ == other.data_; }

private:
    struct Data {
        SymbolScope scope;
        std::size_t even_count = 0;
        std::size_t odd_count = 0;
    };
    explicit Chart(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

} // namespace scarr

#endif
