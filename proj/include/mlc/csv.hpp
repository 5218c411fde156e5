// CSV emission/parsing for the toolkit's file formats.
// All floating-point fields are printed with 9 significant digits.
#ifndef MLC_CSV_HPP
#define MLC_CSV_HPP

#include <string>
#include <vector>

#include "mlc/mi.hpp"
#include "mlc/rate.hpp"
#include "mlc/sim.hpp"

namespace mlc {

std::string format_g9(double v);

/// snr_linear,snr_db,mi_low,mi_high,mi_total,backend,stderr
void write_mi_csv(const std::string& path, const MiCurve& low, const MiCurve& high,
                  const MiCurve& total);

/// Reads the mi_low column back into a curve (backend column preserved).
MiCurve read_mi_csv(const std::string& path, MiLevel level = MiLevel::Low);

/// M,snr_linear,snr_db,ar_bits,mi_bits,gain_db  (gain empty when undefined)
void write_ar_csv(const std::string& path, const std::vector<GainPoint>& points);

/// snr_db,snr_linear,frames,bit_errors,ber,avg_iterations,low_confidence
void write_ber_csv(const std::string& path, const std::vector<BerRecord>& records);

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace mlc

#endif
