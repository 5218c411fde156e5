#include "mlc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mlc/channel.hpp"

namespace mlc {

std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot write " + path);
    return out;
}

const char* backend_name(MiBackend b) {
    return b == MiBackend::Quadrature ? "quad" : "mc";
}

}  // namespace

void write_mi_csv(const std::string& path, const MiCurve& low, const MiCurve& high,
                  const MiCurve& total) {
    if (low.points.size() != high.points.size() || low.points.size() != total.points.size())
        throw std::invalid_argument("write_mi_csv: curve size mismatch");
    auto out = open_out(path);
    out << "snr_linear,snr_db,mi_low,mi_high,mi_total,backend,stderr\n";
    for (std::size_t i = 0; i < low.points.size(); ++i) {
        const MiPoint& p = low.points[i];
        out << format_g9(p.snr) << ',' << format_g9(snr_to_db(p.snr)) << ','
            << format_g9(p.value) << ',' << format_g9(high.points[i].value) << ','
            << format_g9(total.points[i].value) << ',' << backend_name(p.backend) << ','
            << format_g9(p.std_error) << '\n';
    }
}

MiCurve read_mi_csv(const std::string& path, MiLevel level) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty file " + path);
    const auto header = split_csv_line(line);
    std::size_t value_col = 2;
    const char* want = level == MiLevel::Low ? "mi_low" : level == MiLevel::High ? "mi_high" : "mi_total";
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == want) value_col = i;

    MiCurve curve;
    curve.level = level;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() <= value_col)
            throw std::runtime_error("csv: short row at " + path + ":" + std::to_string(line_no));
        MiPoint p;
        p.snr = std::stod(f[0]);
        p.value = std::stod(f[value_col]);
        p.backend = (f.size() > 5 && f[5] == "mc") ? MiBackend::MonteCarlo : MiBackend::Quadrature;
        p.std_error = f.size() > 6 ? std::stod(f[6]) : 0.0;
        curve.points.push_back(p);
    }
    if (curve.points.size() < 2) throw std::runtime_error("csv: too few rows in " + path);
    return curve;
}

void write_ar_csv(const std::string& path, const std::vector<GainPoint>& points) {
    auto out = open_out(path);
    out << "M,snr_linear,snr_db,ar_bits,mi_bits,gain_db\n";
    for (const GainPoint& g : points) {
        out << g.repetition << ',' << format_g9(g.snr) << ',' << format_g9(g.snr_db) << ','
            << format_g9(g.achievable_rate) << ',' << format_g9(g.mi_at_snr) << ','
            << (g.gain_db ? format_g9(*g.gain_db) : "") << '\n';
    }
}

void write_ber_csv(const std::string& path, const std::vector<BerRecord>& records) {
    auto out = open_out(path);
    out << "snr_db,snr_linear,frames,bit_errors,ber,avg_iterations,low_confidence\n";
    for (const BerRecord& r : records) {
        out << format_g9(r.snr_db) << ',' << format_g9(r.snr_linear) << ',' << r.frames << ','
            << r.bit_errors << ',' << format_g9(r.ber) << ',' << format_g9(r.avg_iterations)
            << ',' << (r.low_confidence ? 1 : 0) << '\n';
    }
}

}  // namespace mlc
