#include "sfl/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sfl/toml_lite.hpp"

namespace sfl {

namespace {

[[noreturn]] void fail(const std::string& field, double value, const std::string& why) {
    std::ostringstream os;
    os.precision(17);
    os << "invalid config: " << field << " = " << value << " (" << why << ")";
    throw ConfigError(os.str());
}

void require_positive(const std::string& field, double v) {
    if (!(v > 0) || !std::isfinite(v)) fail(field, v, "must be strictly positive");
}

double get_num(const toml::Table& t, const std::string& section, const std::string& key) {
    auto it = t.find(key);
    if (it == t.end())
        throw ConfigError("invalid config: missing key " + section + "." + key);
    return it->second.as_double();
}

double get_num_or(const toml::Table& t, const std::string& key, double fallback) {
    auto it = t.find(key);
    return it == t.end() ? fallback : it->second.as_double();
}

int64_t get_int(const toml::Table& t, const std::string& section, const std::string& key) {
    auto it = t.find(key);
    if (it == t.end())
        throw ConfigError("invalid config: missing key " + section + "." + key);
    return it->second.as_int();
}

bool has_key(const toml::Table& t, const std::string& key) { return t.count(key) > 0; }

const toml::Array& get_array(const toml::Table& t, const std::string& section,
                             const std::string& key) {
    auto it = t.find(key);
    if (it == t.end())
        throw ConfigError("invalid config: missing key " + section + "." + key);
    return it->second.as_array();
}

}  // namespace

const SplitProfile& Scenario::split(int u) const {
    for (const auto& sp : splits)
        if (sp.split_point == u) return sp;
    throw ConfigError("split point " + std::to_string(u) + " not present in split table");
}

void validate_scenario(const Scenario& s) {
    const auto& c = s.config;
    if (c.num_clients < 1) fail("scenario.clients", c.num_clients, "K must be >= 1");
    if (c.local_iterations < 1) fail("scenario.iterations", c.local_iterations, "I must be >= 1");
    if (c.batch_size < 1) fail("scenario.batch_size", c.batch_size, "B must be >= 1");
    if (c.rounds < 0) fail("scenario.rounds", c.rounds, "N must be >= 0");
    require_positive("scenario.slot_s", c.slot_seconds);
    require_positive("scenario.bp_fp_ratio", c.sigma);
    if (c.energy_weight < 0) fail("scenario.energy_weight", c.energy_weight, "lambda must be >= 0");
    if (c.split_set.empty()) throw ConfigError("invalid config: scenario.split_set is empty");

    const double inv_k = 1.0 / double(c.num_clients);
    const auto& srv = s.server;
    if (srv.alpha_min < 0 || srv.alpha_min > inv_k)
        fail("server.alpha_min", srv.alpha_min, "must lie in [0, 1/K]");
    if (srv.beta_min < 0 || srv.beta_min > inv_k)
        fail("server.beta_min", srv.beta_min, "must lie in [0, 1/K]");
    if (srv.rho_min < 0 || srv.rho_min > inv_k)
        fail("server.rho_min", srv.rho_min, "must lie in [0, 1/K]");
    require_positive("server.total_power_w", srv.total_power_w);
    require_positive("server.f", srv.freq_hz);
    require_positive("server.intensity", srv.intensity);
    require_positive("server.uplink_bw", srv.uplink_bw_hz);
    require_positive("server.downlink_bw", srv.downlink_bw_hz);
    require_positive("server.noise_psd", srv.noise_psd);

    if (int(s.clients.size()) != c.num_clients)
        throw ConfigError("invalid config: [[clients]] count " + std::to_string(s.clients.size()) +
                          " does not match K = " + std::to_string(c.num_clients));
    for (size_t k = 0; k < s.clients.size(); ++k) {
        const auto& cl = s.clients[k];
        const std::string tag = "clients[" + std::to_string(k) + "].";
        require_positive(tag + "p_w", cl.transmit_power_w);
        require_positive(tag + "f", cl.freq_hz);
        require_positive(tag + "intensity", cl.intensity);
        require_positive(tag + "omega", cl.energy_coeff);
        if (cl.ring < 0 || cl.ring >= int(s.mobility.rings.size()))
            fail(tag + "ring", cl.ring, "ring index out of range");
    }

    for (const auto& sp : s.splits) {
        const std::string tag = "split_profiles[u=" + std::to_string(sp.split_point) + "].";
        require_positive(tag + "psi_cf", sp.psi_cf);
        require_positive(tag + "psi_sf", sp.psi_sf);
        require_positive(tag + "psi_cb", sp.psi_cb);
        require_positive(tag + "psi_sb", sp.psi_sb);
        require_positive(tag + "gamma_m", sp.gamma_m);
        require_positive(tag + "gamma_a", sp.gamma_a);
        require_positive(tag + "gamma_g", sp.gamma_g);
        if (sp.gamma_g != sp.gamma_a)
            fail(tag + "gamma_g", sp.gamma_g, "gradient size must equal smashed-data size");
    }
    for (int u : c.split_set) s.split(u);  // throws if missing

    const auto& m = s.mobility;
    if (m.rings.empty()) throw ConfigError("invalid config: no rings defined");
    for (size_t r = 0; r < m.rings.size(); ++r) {
        if (!(m.rings[r].inner_m < m.rings[r].outer_m))
            fail("scenario.ring_bounds_m[" + std::to_string(r) + "]", m.rings[r].inner_m,
                 "ring inner bound must be < outer bound");
    }
    if (m.speed_min_mps < 0) fail("scenario.speed_min_mps", m.speed_min_mps, "must be >= 0");
    if (m.speed_max_mps < m.speed_min_mps)
        fail("scenario.speed_max_mps", m.speed_max_mps, "must be >= speed_min_mps");
    require_positive("scenario.carrier_ghz", m.carrier_hz);
    require_positive("scenario.uav_height_m", m.uav_height_m);
}

Scenario load_scenario(const std::string& toml_text) {
    toml::Document doc;
    try {
        doc = toml::parse(toml_text);
    } catch (const toml::ParseError& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }

    if (!doc.has_table("scenario")) throw ConfigError("invalid config: missing [scenario]");
    if (!doc.has_table("server")) throw ConfigError("invalid config: missing [server]");
    const toml::Table& sc = doc.tables.at("scenario");
    const toml::Table& sv = doc.tables.at("server");

    Scenario s;
    auto& c = s.config;
    c.local_iterations = int(get_int(sc, "scenario", "iterations"));
    c.rounds = int(get_int(sc, "scenario", "rounds"));
    c.batch_size = int(get_int(sc, "scenario", "batch_size"));
    c.sigma = get_num(sc, "scenario", "bp_fp_ratio");
    c.slot_seconds = get_num(sc, "scenario", "slot_s");
    c.energy_weight = get_num(sc, "scenario", "energy_weight");
    c.rng_seed = uint64_t(get_int(sc, "scenario", "rng_seed"));
    for (const auto& v : get_array(sc, "scenario", "split_set")) c.split_set.push_back(int(v.as_int()));

    auto& m = s.mobility;
    {
        const auto& bp = get_array(sc, "scenario", "bs_pos_m");
        if (bp.size() != 3) throw ConfigError("invalid config: scenario.bs_pos_m needs 3 entries");
        for (int i = 0; i < 3; ++i) m.bs_pos_m[i] = bp[i].as_double();
    }
    m.uav_height_m = get_num(sc, "scenario", "uav_height_m");
    m.speed_min_mps = get_num(sc, "scenario", "speed_min_mps");
    m.speed_max_mps = get_num(sc, "scenario", "speed_max_mps");
    m.carrier_hz = get_num(sc, "scenario", "carrier_ghz") * 1e9;
    {
        const auto& rb = get_array(sc, "scenario", "ring_bounds_m");
        if (rb.size() < 2) throw ConfigError("invalid config: scenario.ring_bounds_m needs >= 2 entries");
        for (size_t i = 0; i + 1 < rb.size(); ++i)
            m.rings.push_back({rb[i].as_double(), rb[i + 1].as_double()});
    }

    auto& srv = s.server;
    srv.total_power_w = get_num(sv, "server", "total_power_w");
    srv.freq_hz = get_num(sv, "server", "f_ghz") * 1e9;
    srv.intensity = get_num(sv, "server", "flops") / srv.freq_hz;
    srv.uplink_bw_hz = get_num(sv, "server", "uplink_bw_mhz") * 1e6;
    srv.downlink_bw_hz = get_num(sv, "server", "downlink_bw_mhz") * 1e6;
    srv.noise_psd = dbm_per_mhz_to_w_per_hz(get_num(sv, "server", "noise_psd_dbm_mhz"));
    srv.alpha_min = get_num(sv, "server", "alpha_min");
    srv.beta_min = get_num(sv, "server", "beta_min");
    srv.rho_min = get_num_or(sv, "rho_min", srv.beta_min);

    auto cit = doc.arrays.find("clients");
    if (cit == doc.arrays.end() || cit->second.empty())
        throw ConfigError("invalid config: no [[clients]] entries");
    for (size_t k = 0; k < cit->second.size(); ++k) {
        const toml::Table& t = cit->second[k];
        const std::string sec = "clients[" + std::to_string(k) + "]";
        ClientProfile cl;
        cl.transmit_power_w = get_num(t, sec, "p_w");
        cl.freq_hz = get_num(t, sec, "f_ghz") * 1e9;
        cl.intensity = get_num(t, sec, "flops") / cl.freq_hz;
        // omega is quoted in W/GHz^3; convert to W/(cycle/s)^3
        cl.energy_coeff = get_num(t, sec, "omega_w_per_ghz3") / 1e27;
        cl.ring = int(get_int(t, sec, "ring"));
        s.clients.push_back(cl);
    }
    c.num_clients = int(s.clients.size());

    auto pit = doc.arrays.find("split_profiles");
    if (pit == doc.arrays.end() || pit->second.empty())
        throw ConfigError("invalid config: no [[split_profiles]] entries");
    for (size_t i = 0; i < pit->second.size(); ++i) {
        const toml::Table& t = pit->second[i];
        const std::string sec = "split_profiles[" + std::to_string(i) + "]";
        SplitProfile sp;
        sp.split_point = int(get_int(t, sec, "u"));
        sp.psi_cf = gflops_to_flops(get_num(t, sec, "psi_cf_gflops"));
        sp.psi_sf = gflops_to_flops(get_num(t, sec, "psi_sf_gflops"));
        // BP costs derive from the FP costs via the configured ratio unless
        // the table overrides them explicitly
        sp.psi_cb = has_key(t, "psi_cb_gflops")
                        ? gflops_to_flops(get_num(t, sec, "psi_cb_gflops"))
                        : c.sigma * sp.psi_cf;
        sp.psi_sb = has_key(t, "psi_sb_gflops")
                        ? gflops_to_flops(get_num(t, sec, "psi_sb_gflops"))
                        : c.sigma * sp.psi_sf;
        sp.gamma_m = kb_to_bits(get_num(t, sec, "gamma_m_kb"));
        sp.gamma_a = kb_to_bits(get_num(t, sec, "gamma_a_kb"));
        sp.gamma_g = sp.gamma_a;
        s.splits.push_back(sp);
    }

    validate_scenario(s);
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scenario(ss.str());
}

std::string save_scenario(const Scenario& s) {
    toml::Document doc;
    toml::Table& sc = doc.tables["scenario"];
    sc["iterations"] = toml::Value{int64_t(s.config.local_iterations)};
    sc["rounds"] = toml::Value{int64_t(s.config.rounds)};
    sc["batch_size"] = toml::Value{int64_t(s.config.batch_size)};
    sc["bp_fp_ratio"] = toml::Value{s.config.sigma};
    sc["slot_s"] = toml::Value{s.config.slot_seconds};
    sc["energy_weight"] = toml::Value{s.config.energy_weight};
    sc["rng_seed"] = toml::Value{int64_t(s.config.rng_seed)};
    {
        toml::Array a;
        for (int u : s.config.split_set) a.push_back(toml::Value{int64_t(u)});
        sc["split_set"] = toml::Value{a};
    }
    {
        toml::Array a;
        for (double v : s.mobility.bs_pos_m) a.push_back(toml::Value{v});
        sc["bs_pos_m"] = toml::Value{a};
    }
    sc["uav_height_m"] = toml::Value{s.mobility.uav_height_m};
    sc["speed_min_mps"] = toml::Value{s.mobility.speed_min_mps};
    sc["speed_max_mps"] = toml::Value{s.mobility.speed_max_mps};
    sc["carrier_ghz"] = toml::Value{s.mobility.carrier_hz / 1e9};
    {
        toml::Array a;
        a.push_back(toml::Value{s.mobility.rings.front().inner_m});
        for (const auto& r : s.mobility.rings) a.push_back(toml::Value{r.outer_m});
        sc["ring_bounds_m"] = toml::Value{a};
    }

    toml::Table& sv = doc.tables["server"];
    sv["total_power_w"] = toml::Value{s.server.total_power_w};
    sv["f_ghz"] = toml::Value{s.server.freq_hz / 1e9};
    sv["flops"] = toml::Value{s.server.intensity * s.server.freq_hz};
    sv["uplink_bw_mhz"] = toml::Value{s.server.uplink_bw_hz / 1e6};
    sv["downlink_bw_mhz"] = toml::Value{s.server.downlink_bw_hz / 1e6};
    sv["noise_psd_dbm_mhz"] =
        toml::Value{10.0 * std::log10(s.server.noise_psd * 1e6 / 1e-3)};
    sv["alpha_min"] = toml::Value{s.server.alpha_min};
    sv["beta_min"] = toml::Value{s.server.beta_min};
    sv["rho_min"] = toml::Value{s.server.rho_min};

    for (const auto& cl : s.clients) {
        toml::Table t;
        t["p_w"] = toml::Value{cl.transmit_power_w};
        t["f_ghz"] = toml::Value{cl.freq_hz / 1e9};
        t["flops"] = toml::Value{cl.intensity * cl.freq_hz};
        t["omega_w_per_ghz3"] = toml::Value{cl.energy_coeff * 1e27};
        t["ring"] = toml::Value{int64_t(cl.ring)};
        doc.arrays["clients"].push_back(std::move(t));
    }

    for (const auto& sp : s.splits) {
        toml::Table t;
        t["u"] = toml::Value{int64_t(sp.split_point)};
        t["psi_cf_gflops"] = toml::Value{sp.psi_cf / 1e9};
        t["psi_sf_gflops"] = toml::Value{sp.psi_sf / 1e9};
        t["psi_cb_gflops"] = toml::Value{sp.psi_cb / 1e9};
        t["psi_sb_gflops"] = toml::Value{sp.psi_sb / 1e9};
        t["gamma_m_kb"] = toml::Value{bits_to_kb(sp.gamma_m)};
        t["gamma_a_kb"] = toml::Value{bits_to_kb(sp.gamma_a)};
        doc.arrays["split_profiles"].push_back(std::move(t));
    }
    return toml::serialize(doc);
}

Scenario builtin_paper_scenario() {
    Scenario s;
    auto& c = s.config;
    c.num_clients = 10;
    c.local_iterations = 3;
    c.rounds = 500;
    c.batch_size = 8;
    c.sigma = 2.0;
    c.slot_seconds = 0.1;
    c.energy_weight = 4.0;
    c.split_set = {1, 2, 3, 4};
    c.rng_seed = 1;

    auto& m = s.mobility;
    m.bs_pos_m = {0.0, 0.0, 30.0};
    m.uav_height_m = 20.0;
    m.speed_min_mps = 0.1;
    m.speed_max_mps = 4.0;
    m.carrier_hz = 2e9;
    m.rings = {{100.0, 550.0}, {550.0, 820.0}, {820.0, 1000.0}};

    auto& srv = s.server;
    srv.total_power_w = 40.0;
    srv.freq_hz = 2.51e9;
    srv.intensity = 195e12 / srv.freq_hz;
    srv.uplink_bw_hz = 20e6;
    srv.downlink_bw_hz = 20e6;
    srv.noise_psd = dbm_per_mhz_to_w_per_hz(-114.0);
    srv.alpha_min = 1.0 / (5.0 * c.num_clients);
    srv.beta_min = 1.0 / (5.0 * c.num_clients);
    srv.rho_min = 1.0 / (5.0 * c.num_clients);

    const double powers[10] = {1.0, 0.4, 0.1, 1.0, 0.4, 0.1, 1.0, 0.4, 0.2, 0.1};
    for (int k = 0; k < 10; ++k) {
        ClientProfile cl;
        cl.transmit_power_w = powers[k];
        cl.freq_hz = 1e9;
        cl.intensity = 2.5e12 / cl.freq_hz;
        cl.energy_coeff = 16.0 / 1e27;     // 16 W/GHz^3
        cl.ring = k < 3 ? 0 : (k < 6 ? 1 : 2);
        s.clients.push_back(cl);
    }

    // Swin-L with LoRA, measured per split point: {u, FP GFLOPs client/server,
    // trainable-parameter KB, smashed-data KB}
    struct Row { int u; double cf, sf, m_kb, a_kb; };
    const Row rows[4] = {
        {1, 6.18, 64.10, 192.0, 2352.0},
        {2, 12.50, 57.78, 612.0, 1176.0},
        {3, 64.19, 6.09, 7596.0, 588.0},
        {4, 70.28, 0.001, 9276.0, 294.0},
    };
    for (const Row& r : rows) {
        SplitProfile sp;
        sp.split_point = r.u;
        sp.psi_cf = gflops_to_flops(r.cf);
        sp.psi_sf = gflops_to_flops(r.sf);
        sp.psi_cb = c.sigma * sp.psi_cf;
        sp.psi_sb = c.sigma * sp.psi_sf;
        sp.gamma_m = kb_to_bits(r.m_kb);
        sp.gamma_a = kb_to_bits(r.a_kb);
        sp.gamma_g = sp.gamma_a;
        s.splits.push_back(sp);
    }

    // smashed-data size shrinks with deeper split points in this table
    for (size_t i = 1; i < s.splits.size(); ++i)
        if (s.splits[i].gamma_a > s.splits[i - 1].gamma_a)
            throw ConfigError("builtin split table: gamma_a must be non-increasing in u");

    validate_scenario(s);
    return s;
}

}  // namespace sfl
