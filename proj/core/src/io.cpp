#include "g2flow/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace g2flow {

Profile read_profile(std::istream& in, std::uint32_t fourier_n) {
    std::string head;
    if (!(in >> head)) throw std::invalid_argument("read_profile: empty input");
    if (head == "FOURIER") {
        struct Mode {
            int k;
            double a, b;
        };
        std::vector<Mode> modes;
        int k;
        double a, b;
        while (in >> k >> a >> b) modes.push_back({k, a, b});
        Grid g(fourier_n);
        return Profile::sample(g, [&](double x) {
            double s = 0.0;
            for (const Mode& m : modes) {
                const double ang = 2.0 * std::numbers::pi * m.k * x;
                s += m.a * std::cos(ang) + m.b * std::sin(ang);
            }
            return s;
        });
    }
    if (head != "N") throw std::invalid_argument("read_profile: expected 'N <int>' or 'FOURIER' header");
    std::uint32_t n = 0;
    if (!(in >> n)) throw std::invalid_argument("read_profile: missing sample count");
    Grid g(n);
    std::vector<double> v(n);
    for (std::uint32_t i = 0; i < n; ++i)
        if (!(in >> v[i])) throw std::invalid_argument("read_profile: truncated sample list");
    return Profile(g, std::move(v));
}

Profile read_profile_file(const std::string& path, std::uint32_t fourier_n) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("read_profile: cannot open '" + path + "'");
    return read_profile(in, fourier_n);
}

void write_profile(std::ostream& out, const Profile& p) {
    out << "N " << p.n() << "\n";
    out << std::setprecision(17);
    for (std::uint32_t k = 0; k < p.n(); ++k) out << p[k] << "\n";
}

void write_profile_file(const std::string& path, const Profile& p) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("write_profile: cannot open '" + path + "'");
    write_profile(out, p);
}

void dump_form(std::ostream& out, const MultiForm& form) {
    out << std::setprecision(17);
    std::vector<const Profile*> refs;
    for (const auto& [mask, coeff] : form.terms()) {
        out << "AXES";
        for (int i = 0; i < 7; ++i)
            if (mask & (1 << i)) out << ' ' << kAxisName[i];
        const double c0 = coeff[0];
        bool constant = true;
        for (std::uint32_t k = 0; k < coeff.n(); ++k)
            if (std::abs(coeff[k] - c0) > 1e-14) {
                constant = false;
                break;
            }
        if (constant) {
            out << " COEFF " << c0 << "\n";
        } else {
            out << " COEFF profile:p" << refs.size() << "\n";
            refs.push_back(&coeff);
        }
    }
    for (std::size_t i = 0; i < refs.size(); ++i) {
        out << "PROFILE p" << i << "\n";
        write_profile(out, *refs[i]);
    }
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    out << std::setprecision(17);
    for (std::size_t i = 0; i < header.size(); ++i) out << header[i] << (i + 1 < header.size() ? ',' : '\n');
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << row[i] << (i + 1 < row.size() ? ',' : '\n');
    }
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace g2flow
