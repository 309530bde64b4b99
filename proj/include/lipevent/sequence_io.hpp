#ifndef LIPEVENT_SEQUENCE_IO_HPP
#define LIPEVENT_SEQUENCE_IO_HPP

#include <iosfwd>
#include <string>

#include "lipevent/geometry.hpp"
#include "lipevent/metrics.hpp"

namespace lipevent {

// Landmark sequence CSV: header row exactly `frame,landmark,x,y,z`, then one
// row per landmark per frame. Frame and landmark ids are 0-based integers,
// coordinates decimal millimetres. Readers reject ragged landmark counts and
// report offending row numbers.
LandmarkSequence read_sequence_csv(std::istream& in, double frame_rate);
LandmarkSequence read_sequence_csv_file(const std::string& path, double frame_rate);
void write_sequence_csv(std::ostream& out, const LandmarkSequence& seq);
void write_sequence_csv_file(const std::string& path, const LandmarkSequence& seq);

// Equivalent JSON form: {"frame_rate": r, "frames": [[[x,y,z], ...], ...]}.
LandmarkSequence read_sequence_json(std::istream& in);
LandmarkSequence read_sequence_json_file(const std::string& path);
void write_sequence_json(std::ostream& out, const LandmarkSequence& seq);
void write_sequence_json_file(const std::string& path, const LandmarkSequence& seq);

// Dispatches on the .csv / .json extension. Throws ParseError otherwise.
LandmarkSequence read_sequence_file(const std::string& path, double frame_rate);

// Ground-truth sidecar: {"opening_frame": i, "closing_frame": j,
// "labels": ["static"|"opening"|"closing", ...]} (labels optional).
GroundTruth read_truth_json_file(const std::string& path);
void write_truth_json_file(const std::string& path, const GroundTruth& truth);

// Fixed-format decimal used by all writers so reruns are byte-identical.
std::string format_double(double value);

}  // namespace lipevent

#endif  // LIPEVENT_SEQUENCE_IO_HPP
