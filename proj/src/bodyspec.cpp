#include "flmlab/bodyspec.hpp"

#include <cmath>
#include <map>

#include "flmlab/errors.hpp"
#include "flmlab/params.hpp"

namespace flmlab {

namespace {

std::map<std::string, std::string> parse_fields(std::string_view rest, std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t start = 0;
    while (start < rest.size()) {
        auto comma = rest.find(',', start);
        if (comma == std::string_view::npos) comma = rest.size();
        const auto item = rest.substr(start, comma - start);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw InvalidArgument("body spec '" + std::string(text) + "': expected key=value, got '" + std::string(item) + "'");
        }
        const std::string key(item.substr(0, eq));
        if (!out.emplace(key, std::string(item.substr(eq + 1))).second) {
            throw InvalidArgument("body spec '" + std::string(text) + "': repeated key " + key);
        }
        start = comma + 1;
    }
    return out;
}

double take_double(std::map<std::string, std::string>& f, const std::string& key, std::string_view text) {
    const auto it = f.find(key);
    if (it == f.end()) throw InvalidArgument("body spec '" + std::string(text) + "': missing " + key);
    const double v = parse_double(it->second, key);
    f.erase(it);
    return v;
}

void validate(const BodySpec& s) {
    if (!(s.scale > 0.0) || !std::isfinite(s.scale)) throw InvalidArgument("body spec: scale must be positive");
    switch (s.kind) {
    case BodySpec::Kind::Cube:
    case BodySpec::Kind::Cross:
        if (s.dim < 1 || s.dim > 20) throw InvalidArgument("body spec: cube/cross dimension must lie in [1, 20]");
        break;
    case BodySpec::Kind::Simplex:
        if (s.dim < 1 || s.dim > 4096) throw InvalidArgument("body spec: simplex dimension must lie in [1, 4096]");
        break;
    case BodySpec::Kind::Hanner:
        if (!(s.a > 0.0 && s.a < 1.0)) throw InvalidArgument("body spec: hanner a must lie in (0, 1)");
        if (s.dim < 1) throw InvalidArgument("body spec: hanner dim must be positive");
        break;
    case BodySpec::Kind::Geom:
        if (s.dim < 2) throw InvalidArgument("body spec: geom n must be at least 2");
        if (!(s.c > 0.0 && s.c < 1.0) || !(s.beta > s.c - 0.5 && s.beta < s.c)) {
            throw InvalidArgument("body spec: geom needs c in (0,1) and beta in (c - 1/2, c)");
        }
        break;
    }
}

} // namespace

BodySpec parse_body_spec(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw InvalidArgument("body spec '" + std::string(text) + "': missing ':'");
    const std::string kind(text.substr(0, colon));
    std::string_view rest = text.substr(colon + 1);
    BodySpec s;
    std::map<std::string, std::string> f;
    if (kind == "cube" || kind == "cross" || kind == "simplex") {
        s.kind = kind == "cube" ? BodySpec::Kind::Cube : kind == "cross" ? BodySpec::Kind::Cross : BodySpec::Kind::Simplex;
        const auto comma = rest.find(',');
        s.dim = static_cast<int>(parse_long(rest.substr(0, comma), "dimension"));
        if (comma != std::string_view::npos) f = parse_fields(rest.substr(comma + 1), text);
    } else if (kind == "hanner") {
        s.kind = BodySpec::Kind::Hanner;
        f = parse_fields(rest, text);
        s.a = take_double(f, "a", text);
        s.dim = static_cast<int>(take_double(f, "dim", text));
    } else if (kind == "geom") {
        s.kind = BodySpec::Kind::Geom;
        f = parse_fields(rest, text);
        s.c = take_double(f, "c", text);
        s.beta = take_double(f, "beta", text);
        s.dim = static_cast<int>(take_double(f, "n", text));
    } else {
        throw InvalidArgument("body spec '" + std::string(text) + "': unknown body kind '" + kind + "'");
    }
    if (f.count("scale")) s.scale = take_double(f, "scale", text);
    if (!f.empty()) throw InvalidArgument("body spec '" + std::string(text) + "': unknown key " + f.begin()->first);
    validate(s);
    return s;
}

std::string to_string(const BodySpec& s) {
    std::string out;
    switch (s.kind) {
    case BodySpec::Kind::Cube:
        out = "cube:" + std::to_string(s.dim);
        break;
    case BodySpec::Kind::Cross:
        out = "cross:" + std::to_string(s.dim);
        break;
    case BodySpec::Kind::Simplex:
        out = "simplex:" + std::to_string(s.dim);
        break;
    case BodySpec::Kind::Hanner:
        out = "hanner:a=" + format_shortest(s.a) + ",dim=" + std::to_string(s.dim);
        break;
    case BodySpec::Kind::Geom:
        out = "geom:c=" + format_shortest(s.c) + ",beta=" + format_shortest(s.beta) + ",n=" + std::to_string(s.dim);
        break;
    }
    if (s.scale != 1.0) out += ",scale=" + format_shortest(s.scale);
    return out;
}

double StandardBody::support(const Vector& x) const {
    if (pair) return flmlab::support(pair->v, x);
    if (geom) {
        const double nrm = x.norm();
        if (nrm == 0.0) return 0.0;
        return spec.scale * nrm * support_K(*geom, (x / nrm).eval());
    }
    throw LimitExceeded(name + ": no coordinates available for support evaluation");
}

double StandardBody::gauge(const Vector& x) const {
    if (pair) return flmlab::gauge(pair->h, x);
    if (geom) {
        if (x.squaredNorm() == 0.0) return 0.0;
        return gauge_K(*geom, x) / spec.scale;
    }
    throw LimitExceeded(name + ": no coordinates available for gauge evaluation");
}

StandardBody make_standard(const BodySpec& spec, const EnumLimits& limits) {
    validate(spec);
    StandardBody b;
    b.spec = spec;
    b.name = to_string(spec);
    b.dim = spec.dim;
    const double s = spec.scale;
    auto from_pair = [&](PolytopePair p) {
        b.counts = FCount{BigCount(p.v.size()), BigCount(p.h.size()), p.v.dim()};
        b.R = circumradius(p.v);
        b.r = inradius(p.h);
        b.pair = std::move(p);
    };
    switch (spec.kind) {
    case BodySpec::Kind::Cube:
        from_pair(scaled(make_cube(spec.dim), s));
        break;
    case BodySpec::Kind::Cross:
        from_pair(scaled(make_cross(spec.dim), s));
        break;
    case BodySpec::Kind::Simplex:
        from_pair(scaled(make_simplex(spec.dim), s));
        break;
    case BodySpec::Kind::Hanner: {
        const HannerExpr e = build_general_n(spec.dim, spec.a);
        b.counts = e.counts();
        b.r = e.inradius() * s;
        b.R = e.circumradius() * s;
        try {
            b.pair = scaled(materialize(e, limits), s);
        } catch (const LimitExceeded&) {
        }
        break;
    }
    case BodySpec::Kind::Geom:
        b.geom = GeomBody(spec.dim, spec.c, spec.beta);
        b.r = b.geom->inradius() * s;
        b.R = b.geom->circumradius() * s;
        break;
    }
    return b;
}

} // namespace flmlab
