#pragma once

#include <string>
#include <vector>

#include "delayctl/control.hpp"
#include "delayctl/kernel.hpp"
#include "delayctl/oracle.hpp"
#include "delayctl/simulate.hpp"
#include "delayctl/spectral.hpp"
#include "delayctl/state.hpp"
#include "delayctl/summation.hpp"

namespace delayctl {

/// Shortest round-trip decimal at 17 significant digits.
std::string format_value(double v);

void write_spectrum_csv(const SpectrumSet& spectrum, const std::string& path);
SpectrumSet read_spectrum_csv(const std::string& path, const DelayKernel& kernel);

void write_mstate_csv(const MState& x, const std::string& path);
MState read_mstate_csv(const std::string& path);

void write_control_csv(const ControlSignal& u, const std::string& path);
ControlSignal read_control_csv(const std::string& path);

void write_trajectory_csv(const Trajectory& traj, const std::string& path);

void write_weight_table_csv(const WeightTable& table, const std::string& path);

void write_gap_report_csv(const std::vector<GapRow>& rows, const std::string& path);

/// Kernel samples as CSV `tau,re_phi,im_phi` over [-1,0].
DelayKernel read_kernel_csv(const std::string& path);
void write_kernel_csv(const DelayKernel& kernel, const std::string& path);

}  // namespace delayctl
