#include "gaussrisk/serialize.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "gaussrisk/error.hpp"

namespace gaussrisk {

namespace {

struct Entry {
    std::size_t line;
    std::vector<double> values;
};

using KeyValues = std::map<std::string, Entry>;

KeyValues read_key_values(std::istream& in) {
    KeyValues kv;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (const auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
        std::istringstream tokens(text);
        std::string key;
        if (!(tokens >> key)) continue;
        Entry entry{line_no, {}};
        std::string token;
        while (tokens >> token) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (ec != std::errc() || ptr != token.data() + token.size()) {
                throw ParseError(line_no, "invalid number '" + token + "' for key '" + key + "'");
            }
            entry.values.push_back(v);
        }
        if (!kv.emplace(key, std::move(entry)).second) throw ParseError(line_no, "duplicate key '" + key + "'");
    }
    return kv;
}

const Entry& require(const KeyValues& kv, const std::string& key, std::size_t count) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(0, "missing key '" + key + "'");
    if (it->second.values.size() != count) {
        throw ParseError(it->second.line, "key '" + key + "' expects " + std::to_string(count) + " values, got " +
                                              std::to_string(it->second.values.size()));
    }
    return it->second;
}

std::size_t read_dim(const KeyValues& kv) {
    const Entry& e = require(kv, "d", 1);
    const double d = e.values[0];
    if (!(d >= 1.0) || d != static_cast<double>(static_cast<std::size_t>(d))) {
        throw ParseError(e.line, "d must be a positive integer");
    }
    return static_cast<std::size_t>(d);
}

Vector read_vector(const KeyValues& kv, const std::string& key, std::size_t d) {
    const Entry& e = require(kv, key, d);
    return Eigen::Map<const Vector>(e.values.data(), static_cast<Eigen::Index>(d));
}

Matrix read_matrix(const KeyValues& kv, const std::string& key, std::size_t d) {
    const Entry& e = require(kv, key, d * d);
    const auto n = static_cast<Eigen::Index>(d);
    return Eigen::Map<const RowMatrix>(e.values.data(), n, n);
}

void write_values(std::ostream& out, const char* key, const double* values, Eigen::Index count) {
    std::string line(key);
    for (Eigen::Index i = 0; i < count; ++i) {
        line += ' ';
        line += format_double(values[i]);
    }
    line += '\n';
    out << line;
}

void write_matrix(std::ostream& out, const char* key, const Matrix& m) {
    const RowMatrix row_major = m;
    write_values(out, key, row_major.data(), row_major.size());
}

template <typename T, typename Reader>
T load_from(const std::string& path, Reader reader) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return reader(in);
}

template <typename Writer>
void save_to(const std::string& path, Writer writer) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    writer(out);
    if (!out) throw IoError("error writing " + path);
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_model(const LinearModel& model, std::ostream& out) {
    model.validate();
    out << "# linear model: f(x) = w'x + intercept\n";
    out << "d " << model.w.size() << '\n';
    out << "intercept " << format_double(model.intercept) << '\n';
    write_values(out, "w", model.w.data(), model.w.size());
}

LinearModel read_model(std::istream& in) {
    const KeyValues kv = read_key_values(in);
    const std::size_t d = read_dim(kv);
    LinearModel model;
    model.intercept = require(kv, "intercept", 1).values[0];
    model.w = read_vector(kv, "w", d);
    model.validate();
    return model;
}

void save_model(const LinearModel& model, const std::string& path) {
    save_to(path, [&](std::ostream& out) { write_model(model, out); });
}

LinearModel load_model(const std::string& path) {
    return load_from<LinearModel>(path, [](std::istream& in) { return read_model(in); });
}

void write_moments(const ClassMoments& moments, std::ostream& out) {
    moments.validate();
    out << "# exact class moments\n";
    out << "d " << moments.dim() << '\n';
    out << "prior_pos " << format_double(moments.prior_pos) << '\n';
    out << "prior_neg " << format_double(moments.prior_neg) << '\n';
    write_values(out, "mu_pos", moments.mu_pos.data(), moments.mu_pos.size());
    write_values(out, "mu_neg", moments.mu_neg.data(), moments.mu_neg.size());
    write_matrix(out, "sigma_pos", moments.sigma_pos);
    write_matrix(out, "sigma_neg", moments.sigma_neg);
}

ClassMoments read_moments(std::istream& in) {
    const KeyValues kv = read_key_values(in);
    const std::size_t d = read_dim(kv);
    ClassMoments m;
    m.prior_pos = require(kv, "prior_pos", 1).values[0];
    m.prior_neg = require(kv, "prior_neg", 1).values[0];
    m.mu_pos = read_vector(kv, "mu_pos", d);
    m.mu_neg = read_vector(kv, "mu_neg", d);
    m.sigma_pos = read_matrix(kv, "sigma_pos", d);
    m.sigma_neg = read_matrix(kv, "sigma_neg", d);
    m.validate();
    return m;
}

void save_moments(const ClassMoments& moments, const std::string& path) {
    save_to(path, [&](std::ostream& out) { write_moments(moments, out); });
}

ClassMoments load_moments(const std::string& path) {
    return load_from<ClassMoments>(path, [](std::istream& in) { return read_moments(in); });
}

}  // namespace gaussrisk
