#ifndef DEGENOP_CSV_HPP
#define DEGENOP_CSV_HPP

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace degenop {

/// CSV writer with a fixed header row and floats at 17 significant digits,
/// so regression diffs are bit-stable.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns)
        : out_(path), n_cols_(columns.size()) {
        if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns[i];
        }
        out_ << '\n';
        out_ << std::setprecision(17);
    }

    void row(const std::vector<double>& values) {
        if (values.size() != n_cols_) throw std::invalid_argument("CsvWriter: column count mismatch");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << values[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
    std::size_t n_cols_;
};

}  // namespace degenop

#endif
