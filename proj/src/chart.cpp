#include "scarr/chart.hpp"

#include "scarr/errors.hpp"

namespace scarr {

Chart::Chart(std::vector<CoordinateSymbol> even,
             std::vector<CoordinateSymbol> odd,
             std::vector<FunctionSymbol> functions) {
    if (even.empty()) throw Error("chart needs at least one even coordinate");
    if (odd.size() > 16) throw Error("more than 16 odd coordinates are not supported");
    auto data = std::make_shared<Data>();
    data->even_count = even.size();
    data->odd_count = odd.size();
    for (auto& c : even) {
        if (c.parity != Parity::Even)
            throw ParityViolation("coordinate " + c.name + " declared in the even block");
        data->scope.declare_coordinate(std::move(c));
    }
    for (auto& c : odd) {
        if (c.parity != Parity::Odd)
            throw ParityViolation("coordinate " + c.name + " declared in the odd block");
        data->scope.declare_coordinate(std::move(c));
    }
    for (auto& f : functions) data->scope.declare_function(std::move(f));
    data_ = std::move(data);
}

std::optional<std::size_t> Chart::coordinate_index(const std::string& name) const {
    const auto& coords = data_->scope.coordinates();
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i].name == name) return i;
    return std::nullopt;
}

Chart Chart::with_extra_functions(const std::vector<FunctionSymbol>& extra) const {
    auto data = std::make_shared<Data>();
    data->even_count = data_->even_count;
    data->odd_count = data_->odd_count;
    for (const auto& c : data_->scope.coordinates()) data->scope.declare_coordinate(c);
    for (const auto& f : data_->scope.functions()) data->scope.declare_function(f);
    for (const auto& f : extra) data->scope.declare_function(f);
    return Chart(std::move(data));
}

bool Chart::same_coordinates(const Chart& other) const {
    if (data_ == other.data_) return true;
    if (coordinate_count() != other.coordinate_count()) return false;
    if (even_count() != other.even_count()) return false;
    for (std::size_t i = 0; i < coordinate_count(); ++i) {
        const auto& a = coordinate(i);
        const auto& b = other.coordinate(i);
        if (a.name != b.name || a.parity != b.parity) return false;
    }
    return true;
}

} // namespace scarr
