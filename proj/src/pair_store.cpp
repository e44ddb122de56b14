#include "helion/pair_store.hpp"

#include <cmath>
#include <set>
#include <string>

#include "helion/cmx_io.hpp"
#include "helion/rng.hpp"

namespace helion {

namespace {

using nlohmann::json;

constexpr const char* kMetaFormat = "helion-pair-v1";

void require_keys(const json& j, const std::set<std::string>& allowed, const char* where) {
    if (!j.is_object()) {
        throw ValidationError(std::string(where) + ": expected a JSON object");
    }
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            throw ValidationError(std::string(where) + ": unknown key '" + item.key() + "'");
        }
    }
    for (const auto& key : allowed) {
        if (!j.contains(key)) {
            throw ValidationError(std::string(where) + ": missing key '" + key + "'");
        }
    }
}

std::string loss_model_name(LossModel model) {
    return model == LossModel::unitary_embed ? "unitary_embed" : "ginibre_subunitary";
}

LossModel loss_model_from_name(const std::string& name) {
    if (name == "unitary_embed") return LossModel::unitary_embed;
    if (name == "ginibre_subunitary") return LossModel::ginibre_subunitary;
    throw ValidationError("unknown loss_model '" + name + "'");
}

}  // namespace

json system_config_to_json(const SystemConfig& config) {
    return json{{"m_in", config.m_in},
                {"n_out", config.n_out},
                {"n_plane", config.n_plane},
                {"target_pixels", config.target_pixels},
                {"target_transmittance", config.target_transmittance},
                {"target_phase", config.target_phase},
                {"loss_model", loss_model_name(config.loss_model)},
                {"seed", config.seed}};
}

SystemConfig system_config_from_json(const json& j) {
    require_keys(j,
                 {"m_in", "n_out", "n_plane", "target_pixels", "target_transmittance",
                  "target_phase", "loss_model", "seed"},
                 "system config");
    SystemConfig config;
    try {
        config.m_in = j.at("m_in").get<std::size_t>();
        config.n_out = j.at("n_out").get<std::size_t>();
        config.n_plane = j.at("n_plane").get<std::size_t>();
        config.target_pixels = j.at("target_pixels").get<std::vector<std::size_t>>();
        config.target_transmittance = j.at("target_transmittance").get<double>();
        config.target_phase = j.at("target_phase").get<double>();
        config.loss_model = loss_model_from_name(j.at("loss_model").get<std::string>());
        config.seed = j.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("system config: ") + e.what());
    }
    config.validate();
    return config;
}

void save_pair(const std::filesystem::path& dir, const ScatteringPair& pair) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory: " + dir.string());

    write_cmx(dir / "s1.cmx", pair.s1);
    write_cmx(dir / "s2.cmx", pair.s2);
    write_cmx(dir / "a.cmx", pair.a);
    write_cmx(dir / "b.cmx", pair.b);

    json meta{{"format", kMetaFormat},
              {"config", system_config_to_json(pair.config)},
              {"sigma_max", pair.sigma_max},
              {"unitary", pair.unitary},
              {"generator", std::string(kGeneratorId)}};
    write_bytes_atomic(dir / "meta.json", meta.dump(2) + "\n");
}

ScatteringPair load_pair(const std::filesystem::path& dir) {
    json meta;
    try {
        meta = json::parse(read_bytes(dir / "meta.json"));
    } catch (const json::exception& e) {
        throw ValidationError("meta.json: " + std::string(e.what()));
    }
    require_keys(meta, {"format", "config", "sigma_max", "unitary", "generator"}, "meta.json");
    if (meta.at("format") != kMetaFormat) {
        throw ValidationError("meta.json: unsupported format tag");
    }

    ScatteringPair pair;
    pair.config = system_config_from_json(meta.at("config"));
    try {
        pair.sigma_max = meta.at("sigma_max").get<double>();
        pair.unitary = meta.at("unitary").get<bool>();
    } catch (const json::exception& e) {
        throw ValidationError("meta.json: " + std::string(e.what()));
    }

    pair.s1 = read_cmx(dir / "s1.cmx");
    pair.s2 = read_cmx(dir / "s2.cmx");
    pair.a = read_cmx(dir / "a.cmx");
    pair.b = read_cmx(dir / "b.cmx");

    const auto& c = pair.config;
    const bool shapes_ok = pair.s1.rows() == c.n_out && pair.s1.cols() == c.m_in &&
                           pair.s2.rows() == c.n_out && pair.s2.cols() == c.m_in &&
                           pair.a.rows() == c.n_plane && pair.a.cols() == c.m_in &&
                           pair.b.rows() == c.n_out && pair.b.cols() == c.n_plane;
    if (!shapes_ok) {
        throw ValidationError("pair directory: matrix shapes disagree with meta.json config");
    }
    if (!(pair.sigma_max >= 0.0) || pair.sigma_max > 1.0 + 1e-9) {
        throw ValidationError("pair directory: sigma_max outside [0, 1 + 1e-9]");
    }
    return pair;
}

}  // namespace helion
