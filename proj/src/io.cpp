#include "delayctl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace delayctl {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::vector<double> parse_row(const std::string& line, std::size_t expect, const std::string& path) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            out.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ": bad numeric field '" + field + "'");
        }
    }
    if (out.size() != expect) {
        throw std::runtime_error(path + ": expected " + std::to_string(expect) +
                                 " fields, got " + std::to_string(out.size()));
    }
    return out;
}

std::string expect_line(std::ifstream& in, const std::string& path) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": unexpected end of file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_spectrum_csv(const SpectrumSet& spectrum, const std::string& path) {
    auto out = open_out(path);
    out << "branch,re_lambda,im_lambda,re_dprime,im_dprime,re_xibar,im_xibar\n";
    for (const EigenRecord& r : spectrum.records) {
        out << r.branch << ',' << format_value(r.lambda.real()) << ',' << format_value(r.lambda.imag())
            << ',' << format_value(r.d_prime.real()) << ',' << format_value(r.d_prime.imag()) << ','
            << format_value(r.xi_bar.real()) << ',' << format_value(r.xi_bar.imag()) << '\n';
    }
}

SpectrumSet read_spectrum_csv(const std::string& path, const DelayKernel& kernel) {
    auto in = open_in(path);
    expect_line(in, path);  // header
    SpectrumSet spectrum;
    spectrum.kernel = kernel;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = parse_row(line, 7, path);
        EigenRecord rec;
        rec.branch = static_cast<int>(f[0]);
        rec.lambda = {f[1], f[2]};
        rec.d_prime = {f[3], f[4]};
        rec.xi_bar = {f[5], f[6]};
        spectrum.records.push_back(rec);
    }
    return spectrum;
}

void write_mstate_csv(const MState& x, const std::string& path) {
    auto out = open_out(path);
    out << "head_re,head_im\n";
    out << format_value(x.head.real()) << ',' << format_value(x.head.imag()) << '\n';
    out << "t,re_x,im_x\n";
    const double h = x.grid_step();
    for (std::size_t j = 0; j < x.tail.size(); ++j) {
        const double t = -1.0 + static_cast<double>(j) * h;
        out << format_value(t) << ',' << format_value(x.tail[j].real()) << ','
            << format_value(x.tail[j].imag()) << '\n';
    }
}

MState read_mstate_csv(const std::string& path) {
    auto in = open_in(path);
    expect_line(in, path);  // head header
    const auto head = parse_row(expect_line(in, path), 2, path);
    expect_line(in, path);  // tail header
    MState x;
    x.head = {head[0], head[1]};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = parse_row(line, 3, path);
        x.tail.emplace_back(f[1], f[2]);
    }
    if (x.tail.size() < 3 || x.tail.size() % 2 == 0) {
        throw std::runtime_error(path + ": tail grid must have an even panel count");
    }
    return x;
}

void write_control_csv(const ControlSignal& u, const std::string& path) {
    auto out = open_out(path);
    out << "t,re_u,im_u\n";
    const double h = u.grid_step();
    for (std::size_t j = 0; j < u.samples.size(); ++j) {
        const double t = static_cast<double>(j) * h;
        out << format_value(t) << ',' << format_value(u.samples[j].real()) << ','
            << format_value(u.samples[j].imag()) << '\n';
    }
}

ControlSignal read_control_csv(const std::string& path) {
    auto in = open_in(path);
    expect_line(in, path);  // header
    ControlSignal u;
    std::string line;
    double t_last = 0.0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = parse_row(line, 3, path);
        t_last = f[0];
        u.samples.emplace_back(f[1], f[2]);
    }
    if (u.samples.size() < 2) throw std::runtime_error(path + ": control signal needs >= 2 samples");
    u.T = t_last;
    return u;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    auto out = open_out(path);
    out << "t,re_x,im_x\n";
    const double h = traj.grid_step();
    for (std::size_t j = 0; j < traj.samples.size(); ++j) {
        const double t = -1.0 + static_cast<double>(j) * h;
        out << format_value(t) << ',' << format_value(traj.samples[j].real()) << ','
            << format_value(traj.samples[j].imag()) << '\n';
    }
}

void write_weight_table_csv(const WeightTable& table, const std::string& path) {
    auto out = open_out(path);
    out << "n,branch,re_lambda,im_lambda,re_w,im_w\n";
    for (const WeightEntry& e : table.entries) {
        out << table.n << ',' << e.branch << ',' << format_value(e.lambda.real()) << ','
            << format_value(e.lambda.imag()) << ',' << format_value(e.weight.real()) << ','
            << format_value(e.weight.imag()) << '\n';
    }
}

void write_gap_report_csv(const std::vector<GapRow>& rows, const std::string& path) {
    auto out = open_out(path);
    out << "n,norm_spectral,norm_oracle,gap_l2\n";
    for (const GapRow& r : rows) {
        out << r.n << ',' << format_value(r.norm_spectral) << ',' << format_value(r.norm_oracle)
            << ',' << format_value(r.gap_l2) << '\n';
    }
}

DelayKernel read_kernel_csv(const std::string& path) {
    auto in = open_in(path);
    expect_line(in, path);  // header
    std::vector<Complex> samples;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = parse_row(line, 3, path);
        samples.emplace_back(f[1], f[2]);
    }
    return DelayKernel::sampled(std::move(samples));
}

void write_kernel_csv(const DelayKernel& kernel, const std::string& path) {
    auto out = open_out(path);
    out << "tau,re_phi,im_phi\n";
    const auto& s = kernel.samples();
    const double h = kernel.grid_step();
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double tau = -1.0 + static_cast<double>(j) * h;
        out << format_value(tau) << ',' << format_value(s[j].real()) << ','
            << format_value(s[j].imag()) << '\n';
    }
}

}  // namespace delayctl
