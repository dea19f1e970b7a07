#include "kokotsakis/spec_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kokotsakis/error.hpp"

namespace kokotsakis::spec_io {

using nlohmann::json;

std::string to_json(const planar::PolyhedronSpec& spec) {
    json j;
    j["deltas"] = spec.base.delta;
    j["tau"] = spec.tau;
    json verts = json::array();
    for (int i = 0; i < 4; ++i) {
        const auto& q = spec.quads[i];
        const auto& f = spec.factors[i];
        verts.push_back({{"alpha", q.alpha},
                         {"beta", q.beta},
                         {"gamma", q.gamma},
                         {"delta", q.delta},
                         {"lambda", f.lambda},
                         {"mu", f.mu},
                         {"nu", f.nu}});
    }
    j["vertices"] = verts;
    j["zetas"] = spec.zetas;
    std::array<int, 4> enumeration{};
    for (int i = 0; i < 4; ++i) enumeration[i] = spec.enumeration[i] + 1;
    j["enumeration"] = enumeration;
    j["sigma"] = {{"alpha", spec.sigma.alpha}, {"gamma", spec.sigma.gamma}};
    return j.dump(2) + "\n";
}

planar::PolyhedronSpec from_json(const std::string& text) {
    planar::PolyhedronSpec spec;
    try {
        const json j = json::parse(text);
        spec.base.delta = j.at("deltas").get<std::array<double, 4>>();
        spec.tau = j.at("tau").get<double>();
        const auto& verts = j.at("vertices");
        if (!verts.is_array() || verts.size() != 4) throw Error(ErrorKind::InvalidInput, "spec needs four vertices");
        for (int i = 0; i < 4; ++i) {
            const auto& v = verts[i];
            spec.quads[i] = {v.at("alpha").get<double>(), v.at("beta").get<double>(), v.at("gamma").get<double>(),
                             v.at("delta").get<double>()};
            spec.factors[i] = {v.at("lambda").get<double>(), v.at("mu").get<double>(), v.at("nu").get<double>()};
        }
        if (j.contains("zetas")) spec.zetas = j.at("zetas").get<std::array<double, 4>>();
        else spec.zetas = planar::compute_zetas(spec.factors);
        if (j.contains("enumeration")) {
            const auto e = j.at("enumeration").get<std::array<int, 4>>();
            for (int i = 0; i < 4; ++i) {
                if (e[i] < 1 || e[i] > 4) throw Error(ErrorKind::InvalidInput, "enumeration entries must be 1..4");
                spec.enumeration[i] = e[i] - 1;
            }
        }
        if (j.contains("sigma")) {
            spec.sigma.alpha = j.at("sigma").at("alpha").get<std::array<int, 4>>();
            spec.sigma.gamma = j.at("sigma").at("gamma").get<std::array<int, 4>>();
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed spec JSON: ") + e.what());
    }
    return spec;
}

void save(const planar::PolyhedronSpec& spec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
    out << to_json(spec);
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path);
}

planar::PolyhedronSpec load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

}  // namespace kokotsakis::spec_io
