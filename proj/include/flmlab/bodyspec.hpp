#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "flmlab/count.hpp"
#include "flmlab/enumerate.hpp"
#include "flmlab/geomflm.hpp"
#include "flmlab/hanner.hpp"
#include "flmlab/polytope.hpp"

namespace flmlab {

// Text forms: cube:4, cross:5, simplex:6, hanner:a=0.5,dim=8,
// geom:c=0.6,beta=0.4,n=64, each optionally followed by ,scale=R.
struct BodySpec {
    enum class Kind { Cube, Cross, Simplex, Hanner, Geom };
    Kind kind = Kind::Cube;
    int dim = 1;
    double a = 0.5;    // hanner
    double c = 0.5;    // geom
    double beta = 0.25; // geom
    double scale = 1.0;

    friend bool operator==(const BodySpec&, const BodySpec&) = default;
};

BodySpec parse_body_spec(std::string_view text);
std::string to_string(const BodySpec& spec);

// A standard body with whatever representations are available at its size.
struct StandardBody {
    BodySpec spec;
    std::string name;
    int dim = 0;
    std::optional<PolytopePair> pair; // polytopes within the materialization limits
    std::optional<GeomBody> geom;
    std::optional<FCount> counts;     // polytopes only
    double r = 0.0;
    double R = 0.0;

    bool has_oracles() const { return pair.has_value() || geom.has_value(); }
    double support(const Vector& x) const;
    double gauge(const Vector& x) const;
};

// Cube and cross need dim <= 20; hanner bodies above the limits keep their
// counts and radii but have no coordinates.
StandardBody make_standard(const BodySpec& spec, const EnumLimits& limits = {});

} // namespace flmlab
