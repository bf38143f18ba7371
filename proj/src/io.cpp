#include "secretary/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace secretary {

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos || line[p] == '#') continue;
        return true;
    }
    return false;
}

std::map<std::string, long long> parse_header(const std::string& line) {
    std::map<std::string, long long> kv;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("malformed header token '" + tok + "'");
        try {
            kv[tok.substr(0, eq)] = std::stoll(tok.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed header value in '" + tok + "'");
        }
    }
    return kv;
}

long long need(const std::map<std::string, long long>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("header is missing '" + key + "='");
    return it->second;
}

template <class T>
std::vector<T> read_row(const std::string& line, std::size_t expect) {
    std::istringstream ss(line);
    std::vector<T> row;
    T x;
    while (ss >> x) row.push_back(x);
    if (!ss.eof()) throw std::invalid_argument("non-numeric token in line: " + line);
    if (row.size() != expect)
        throw std::invalid_argument("expected " + std::to_string(expect) + " entries, got " + std::to_string(row.size()));
    return row;
}

template <class T>
std::vector<T> read_all_numbers(std::istream& in) {
    std::vector<T> out;
    std::string line;
    while (next_data_line(in, line)) {
        std::istringstream ss(line);
        T x;
        while (ss >> x) out.push_back(x);
        if (!ss.eof()) throw std::invalid_argument("non-numeric token in line: " + line);
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    return f;
}

}  // namespace

void write_permutations(std::ostream& out, const std::vector<Permutation>& perms) {
    const int n = perms.empty() ? 0 : perms.front().size();
    out << "n=" << n << " count=" << perms.size() << '\n';
    for (const auto& p : perms) {
        for (int i = 0; i < n; ++i) out << (i ? " " : "") << p.at(i) + 1;
        out << '\n';
    }
}

std::vector<Permutation> read_permutations(std::istream& in) {
    std::string line;
    if (!next_data_line(in, line)) throw std::invalid_argument("permutation file is empty");
    const auto kv = parse_header(line);
    const long long n = need(kv, "n"), count = need(kv, "count");
    if (n < 1 || count < 1) throw std::invalid_argument("permutation header needs n >= 1 and count >= 1");
    std::vector<Permutation> perms;
    perms.reserve(count);
    for (long long i = 0; i < count; ++i) {
        if (!next_data_line(in, line)) throw std::invalid_argument("permutation file ends early");
        perms.push_back(Permutation::from_one_based(read_row<int>(line, n)));
    }
    if (next_data_line(in, line)) throw std::invalid_argument("trailing data after permutations");
    return perms;
}

void write_values(std::ostream& out, const ValueAssignment& values, const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << '\n';
    out << "n=" << values.size() << '\n';
    for (int e = 0; e < values.size(); ++e) out << format_real(values.value(e)) << '\n';
}

std::vector<double> read_values(std::istream& in) {
    std::string line;
    if (!next_data_line(in, line)) throw std::invalid_argument("value file is empty");
    const long long n = need(parse_header(line), "n");
    auto v = read_all_numbers<double>(in);
    if (static_cast<long long>(v.size()) != n)
        throw std::invalid_argument("value file declares n=" + std::to_string(n) + " but holds " +
                                    std::to_string(v.size()) + " values");
    return v;
}

void write_weights(std::ostream& out, const std::vector<double>& weights) {
    for (double w : weights) out << format_real(w) << '\n';
}

std::vector<double> read_weights(std::istream& in) { return read_all_numbers<double>(in); }

void write_family(std::ostream& out, const ReductionFamily& fam) {
    out << "n=" << fam.n << " l=" << fam.ell << " count=" << fam.size() << " d=" << fam.claimed_collision_bound
        << '\n';
    for (const auto& f : fam.funcs) {
        for (int e = 0; e < fam.n; ++e) out << (e ? " " : "") << f[e] + 1;
        out << '\n';
    }
}

ReductionFamily read_family(std::istream& in) {
    std::string line;
    if (!next_data_line(in, line)) throw std::invalid_argument("family file is empty");
    const auto kv = parse_header(line);
    ReductionFamily fam;
    fam.n = static_cast<int>(need(kv, "n"));
    fam.ell = static_cast<int>(need(kv, "l"));
    const long long count = need(kv, "count");
    fam.claimed_collision_bound = static_cast<int>(need(kv, "d"));
    fam.preimage_lo = 0;
    fam.preimage_hi = fam.n;
    if (fam.n < 1 || fam.ell < 1 || count < 1) throw std::invalid_argument("family header needs positive n, l, count");
    for (long long i = 0; i < count; ++i) {
        if (!next_data_line(in, line)) throw std::invalid_argument("family file ends early");
        auto row = read_row<int>(line, fam.n);
        for (int& v : row) {
            if (v < 1 || v > fam.ell) throw std::invalid_argument("family value outside [1, l]");
            --v;
        }
        fam.funcs.push_back(std::move(row));
    }
    if (next_data_line(in, line)) throw std::invalid_argument("trailing data after family functions");
    return fam;
}

std::vector<Permutation> read_permutations_file(const std::string& path) {
    auto f = open_in(path);
    return read_permutations(f);
}

std::vector<double> read_values_file(const std::string& path) {
    auto f = open_in(path);
    return read_values(f);
}

std::vector<double> read_weights_file(const std::string& path) {
    auto f = open_in(path);
    return read_weights(f);
}

ReductionFamily read_family_file(const std::string& path) {
    auto f = open_in(path);
    return read_family(f);
}

}  // namespace secretary
