#include "encoderlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace encoderlab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string run_id_for(const std::string& canonical_config) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_config) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::string out = "run_id,backend,L,seed,t,observable,value,stderr,n_samples\n";
    for (const ResultRow& r : rows) {
        out += r.run_id;
        out += ',';
        out += r.backend;
        out += ',';
        out += std::to_string(r.L);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += format_double(r.t);
        out += ',';
        out += r.observable;
        out += ',';
        out += format_double(r.value);
        out += ',';
        out += format_double(r.stderr_);
        out += ',';
        out += std::to_string(r.n_samples);
        out += '\n';
    }
    return out;
}

std::string rows_to_json(const std::vector<ResultRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ResultRow& r : rows) {
        // Floats go through the same 17-digit renderer as the CSV so the two
        // formats carry identical values.
        nlohmann::json jr;
        jr["run_id"] = r.run_id;
        jr["backend"] = r.backend;
        jr["L"] = r.L;
        jr["seed"] = r.seed;
        jr["t"] = format_double(r.t);
        jr["observable"] = r.observable;
        jr["value"] = format_double(r.value);
        jr["stderr"] = format_double(r.stderr_);
        jr["n_samples"] = r.n_samples;
        arr.push_back(std::move(jr));
    }
    return arr.dump(1) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace encoderlab
