#include "encoderlab/code_spec.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace encoderlab {

std::vector<int> compute_f(const CodeSpec& spec) {
    const int ns = static_cast<int>(spec.sites.size());
    std::vector<int> f(ns);
    for (int j = 0; j < ns; ++j) {
        int hops = 0;
        int cur = j;
        while (spec.sites[cur].successor >= 0) {
            cur = spec.sites[cur].successor;
            ++hops;
            if (hops > ns) throw std::invalid_argument("successor cycle detected");
        }
        f[j] = hops - 1;
    }
    return f;
}

std::pair<std::vector<std::vector<int>>, int> compute_pred_and_m(const CodeSpec& spec) {
    const int ns = static_cast<int>(spec.sites.size());
    std::vector<std::vector<int>> pred(ns);
    std::vector<int> excites(ns, 0);
    for (int j = 0; j < ns; ++j) {
        for (int k = 0; k < ns; ++k) {
            if (k == j) continue;
            if (!commutes(spec.sites[k].correction, spec.sites[j].stabilizer)) {
                pred[j].push_back(k);
                ++excites[k];
            }
        }
    }
    int m = 0;
    for (int k = 0; k < ns; ++k) m = std::max(m, excites[k]);
    return {pred, m};
}

double weight_sum(const CodeSpec& spec, double alpha) {
    if (alpha < 1.0) throw std::invalid_argument("weight_sum requires alpha >= 1");
    double s = 0.0;
    for (const Site& site : spec.sites) s += std::pow(alpha, site.f);
    return s;
}

std::string ValidationReport::str() const {
    if (ok()) return "pass";
    std::ostringstream os;
    for (const auto& i : issues) os << i.check << ": " << i.detail << "\n";
    return os.str();
}

ValidationReport validate_code(const CodeSpec& spec) {
    ValidationReport rep;
    auto add = [&rep](const std::string& check, const std::string& detail) {
        rep.issues.push_back({check, detail});
    };
    const int ns = static_cast<int>(spec.sites.size());

    for (int j = 0; j < ns; ++j) {
        const Site& sj = spec.sites[j];
        if (!sj.stabilizer.is_hermitian())
            add("hermitian-generator", "site " + sj.name);
        for (int k = j + 1; k < ns; ++k)
            if (!commutes(sj.stabilizer, spec.sites[k].stabilizer))
                add("generator-commutation", sj.name + " vs " + spec.sites[k].name);
        if (!sj.correction.is_identity_mask() && commutes(sj.correction, sj.stabilizer))
            add("correction-anticommutation", "site " + sj.name);
        if (sj.sink != (sj.successor < 0))
            add("sink-flag", "site " + sj.name);
    }

    for (size_t li = 0; li < spec.logicals.size(); ++li) {
        const PauliOp& lp = spec.logicals[li];
        for (int j = 0; j < ns; ++j) {
            if (!commutes(lp, spec.sites[j].stabilizer))
                add("logical-vs-generator",
                    "logical " + std::to_string(li) + " vs " + spec.sites[j].name);
            if (!commutes(lp, spec.sites[j].correction))
                add("logical-vs-correction",
                    "logical " + std::to_string(li) + " vs " + spec.sites[j].name);
        }
    }

    try {
        std::vector<int> f = compute_f(spec);
        for (int j = 0; j < ns; ++j)
            if (f[j] != spec.sites[j].f)
                add("f-values", "site " + spec.sites[j].name + " stored " +
                                    std::to_string(spec.sites[j].f) + " computed " +
                                    std::to_string(f[j]));
        auto [pred, m] = compute_pred_and_m(spec);
        for (int j = 0; j < ns; ++j) {
            for (int k : pred[j]) {
                if (f[k] < f[j] + 1)
                    add("f-monotonicity", "predecessor " + spec.sites[k].name + " of " +
                                              spec.sites[j].name + " has f " +
                                              std::to_string(f[k]) + " < " +
                                              std::to_string(f[j] + 1));
            }
        }
        if (pred != spec.pred) add("pred-consistency", "stored pred differs from recomputed");
        if (m != spec.m)
            add("m-consistency",
                "stored m=" + std::to_string(spec.m) + " computed m=" + std::to_string(m));
    } catch (const std::exception& e) {
        add("f-values", e.what());
    }

    return rep;
}

CodeSpec build_repetition(int n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("repetition code needs n >= 2");
    const size_t n = static_cast<size_t>(n_qubits);
    CodeSpec spec;
    spec.n = n;
    for (size_t i = 0; i + 1 < n; ++i) {
        Site s;
        s.name = "g" + std::to_string(i + 1);
        s.stabilizer = pauli_mul(pauli_single(n, i, 'Z'), pauli_single(n, i + 1, 'Z'));
        s.correction = pauli_single(n, i + 1, 'X');
        bool last = (i + 2 == n);
        s.successor = last ? -1 : static_cast<int>(i + 1);
        s.sink = last;
        spec.sites.push_back(std::move(s));
    }
    // X̄ = X^{⊗n}, Z̄ = Z_1.
    PauliOp xbar(n);
    for (size_t q = 0; q < n; ++q) xbar.set_x(q, true);
    spec.logicals = {xbar, pauli_single(n, 0, 'Z')};

    std::vector<int> f = compute_f(spec);
    for (size_t j = 0; j < spec.sites.size(); ++j) spec.sites[j].f = f[j];
    auto [pred, m] = compute_pred_and_m(spec);
    spec.pred = std::move(pred);
    spec.m = m;
    for (size_t j = 0; j < spec.sites.size(); ++j) spec.active.push_back(static_cast<int>(j));
    return spec;
}

std::vector<LogicalProduct> logical_products(const CodeSpec& spec) {
    const size_t k = spec.num_logical_qubits();
    static const char* letter = "IXYZ";
    std::vector<LogicalProduct> out;
    size_t total = 1;
    for (size_t i = 0; i < k; ++i) total *= 4;
    for (size_t code = 1; code < total; ++code) {
        LogicalProduct lp;
        lp.op = pauli_identity(spec.n);
        lp.factors.assign(k, 0);
        size_t c = code;
        for (size_t i = 0; i < k; ++i) {
            int fi = static_cast<int>(c % 4);
            c /= 4;
            lp.factors[i] = fi;
            if (fi == 0) continue;
            lp.name += letter[fi];
            lp.name += std::to_string(i + 1);
            PauliOp factor;
            if (fi == 1) {
                factor = spec.logical_x(i);
            } else if (fi == 3) {
                factor = spec.logical_z(i);
            } else {
                factor = pauli_mul(spec.logical_x(i), spec.logical_z(i));
                factor.phase = static_cast<uint8_t>((factor.phase + 1) & 3);  // Ȳ = i X̄ Z̄
            }
            lp.op = pauli_mul(lp.op, factor);
        }
        out.push_back(std::move(lp));
    }
    return out;
}

namespace {

std::string masks_to_hex(const std::vector<uint64_t>& words, size_t n) {
    const size_t nibbles = (n + 3) / 4;
    std::string s;
    s.reserve(nibbles);
    static const char* digits = "0123456789abcdef";
    for (size_t i = 0; i < nibbles; ++i) {
        size_t bit = 4 * (nibbles - 1 - i);
        uint64_t nib = (bit < 64 * words.size()) ? (words[bit >> 6] >> (bit & 63)) & 0xf : 0;
        s += digits[nib];
    }
    return s;
}

std::vector<uint64_t> hex_to_masks(const std::string& hex, size_t n) {
    std::vector<uint64_t> words((n + 63) / 64, 0);
    for (size_t i = 0; i < hex.size(); ++i) {
        char c = hex[hex.size() - 1 - i];
        uint64_t nib;
        if (c >= '0' && c <= '9') nib = static_cast<uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') nib = static_cast<uint64_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') nib = static_cast<uint64_t>(c - 'A' + 10);
        else throw std::invalid_argument("bad hex digit in mask");
        size_t bit = 4 * i;
        if (bit < 64 * words.size()) words[bit >> 6] |= nib << (bit & 63);
    }
    return words;
}

nlohmann::json pauli_to_json(const PauliOp& p) {
    return {{"x", masks_to_hex(p.x, p.n)},
            {"z", masks_to_hex(p.z, p.n)},
            {"phase", static_cast<int>(p.phase)}};
}

PauliOp pauli_from_json(const nlohmann::json& j, size_t n) {
    PauliOp p(n);
    p.x = hex_to_masks(j.at("x").get<std::string>(), n);
    p.z = hex_to_masks(j.at("z").get<std::string>(), n);
    p.phase = static_cast<uint8_t>(j.at("phase").get<int>() & 3);
    return p;
}

}  // namespace

std::string code_to_json(const CodeSpec& spec) {
    nlohmann::json j;
    j["n"] = spec.n;
    j["m"] = spec.m;
    nlohmann::json sites = nlohmann::json::array();
    for (const Site& s : spec.sites) {
        nlohmann::json js;
        js["name"] = s.name;
        js["stabilizer"] = pauli_to_json(s.stabilizer);
        js["correction"] = pauli_to_json(s.correction);
        if (s.successor >= 0) js["successor"] = s.successor;
        else js["successor"] = nullptr;
        js["f"] = s.f;
        sites.push_back(std::move(js));
    }
    j["sites"] = std::move(sites);
    nlohmann::json logicals = nlohmann::json::array();
    for (const PauliOp& lp : spec.logicals) logicals.push_back(pauli_to_json(lp));
    j["logicals"] = std::move(logicals);
    j["active"] = spec.active;
    return j.dump(2);
}

CodeSpec code_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CodeSpec spec;
    spec.n = j.at("n").get<size_t>();
    for (const auto& js : j.at("sites")) {
        Site s;
        s.name = js.at("name").get<std::string>();
        s.stabilizer = pauli_from_json(js.at("stabilizer"), spec.n);
        s.correction = pauli_from_json(js.at("correction"), spec.n);
        s.successor = js.at("successor").is_null() ? -1 : js.at("successor").get<int>();
        s.f = js.at("f").get<int>();
        s.sink = s.successor < 0;
        spec.sites.push_back(std::move(s));
    }
    for (const auto& jl : j.at("logicals")) spec.logicals.push_back(pauli_from_json(jl, spec.n));
    if (j.contains("active")) spec.active = j.at("active").get<std::vector<int>>();
    else
        for (size_t i = 0; i < spec.sites.size(); ++i) spec.active.push_back(static_cast<int>(i));
    auto [pred, m] = compute_pred_and_m(spec);
    spec.pred = std::move(pred);
    spec.m = m;
    if (spec.m != j.at("m").get<int>())
        throw std::invalid_argument("imported m does not match recomputed value");
    return spec;
}

}  // namespace encoderlab
