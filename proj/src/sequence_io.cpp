#include "lipevent/sequence_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace lipevent {

using nlohmann::json;

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

constexpr const char* kCsvHeader = "frame,landmark,x,y,z";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

long parse_int(const std::string& token, std::size_t row, const char* what) {
    try {
        std::size_t used = 0;
        const long value = std::stol(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw ParseError("row " + std::to_string(row) + ": bad " + what + " '" +
                         token + "'");
    }
}

double parse_coord(const std::string& token, std::size_t row) {
    try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw ParseError("row " + std::to_string(row) + ": bad coordinate '" +
                         token + "'");
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    return out;
}

}  // namespace

LandmarkSequence read_sequence_csv(std::istream& in, double frame_rate) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("row 1: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader)
        throw ParseError(std::string("row 1: header must be exactly '") +
                         kCsvHeader + "'");

    // frame -> landmark -> (point, source row)
    std::map<long, std::map<long, std::pair<Vec3, std::size_t>>> table;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != 5)
            throw ParseError("row " + std::to_string(row) + ": expected 5 fields, got " +
                             std::to_string(fields.size()));
        const long frame = parse_int(fields[0], row, "frame index");
        const long landmark = parse_int(fields[1], row, "landmark index");
        if (frame < 0 || landmark < 0)
            throw ParseError("row " + std::to_string(row) +
                             ": indices must be non-negative");
        const Vec3 p(parse_coord(fields[2], row), parse_coord(fields[3], row),
                     parse_coord(fields[4], row));
        auto [it, inserted] = table[frame].emplace(landmark, std::make_pair(p, row));
        if (!inserted)
            throw ParseError("row " + std::to_string(row) + ": duplicate of row " +
                             std::to_string(it->second.second));
    }
    if (table.empty()) throw ParseError("no landmark rows");

    LandmarkSequence seq;
    seq.frame_rate = frame_rate;
    const std::size_t n = table.begin()->second.size();
    long expected_frame = 0;
    for (const auto& [frame, landmarks] : table) {
        if (frame != expected_frame)
            throw ParseError("frame indices not contiguous: expected " +
                             std::to_string(expected_frame) + ", found " +
                             std::to_string(frame));
        if (landmarks.size() != n)
            throw ParseError("row " + std::to_string(landmarks.begin()->second.second) +
                             ": frame " + std::to_string(frame) + " has " +
                             std::to_string(landmarks.size()) + " landmarks, expected " +
                             std::to_string(n));
        LandmarkFrame f;
        f.index = static_cast<int>(frame);
        long expected_landmark = 0;
        for (const auto& [landmark, entry] : landmarks) {
            if (landmark != expected_landmark)
                throw ParseError("row " + std::to_string(entry.second) +
                                 ": landmark indices not contiguous in frame " +
                                 std::to_string(frame));
            f.landmarks.push_back(entry.first);
            ++expected_landmark;
        }
        seq.frames.push_back(std::move(f));
        ++expected_frame;
    }
    seq.validate();
    return seq;
}

LandmarkSequence read_sequence_csv_file(const std::string& path, double frame_rate) {
    std::ifstream in = open_input(path);
    try {
        return read_sequence_csv(in, frame_rate);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_sequence_csv(std::ostream& out, const LandmarkSequence& seq) {
    out << kCsvHeader << '\n';
    for (const LandmarkFrame& frame : seq.frames)
        for (int i = 0; i < frame.landmark_count(); ++i) {
            const Vec3& p = frame.landmarks[i];
            out << frame.index << ',' << i << ',' << format_double(p.x()) << ','
                << format_double(p.y()) << ',' << format_double(p.z()) << '\n';
        }
}

void write_sequence_csv_file(const std::string& path, const LandmarkSequence& seq) {
    std::ofstream out = open_output(path);
    write_sequence_csv(out, seq);
}

LandmarkSequence read_sequence_json(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("frame_rate") || !doc.contains("frames"))
        throw ParseError("sequence JSON needs 'frame_rate' and 'frames'");

    LandmarkSequence seq;
    seq.frame_rate = doc["frame_rate"].get<double>();
    const json& frames = doc["frames"];
    if (!frames.is_array()) throw ParseError("'frames' must be an array");
    int index = 0;
    for (const json& jframe : frames) {
        if (!jframe.is_array())
            throw ParseError("frame " + std::to_string(index) + " must be an array");
        LandmarkFrame f;
        f.index = index;
        for (const json& jp : jframe) {
            if (!jp.is_array() || jp.size() != 3)
                throw ParseError("frame " + std::to_string(index) +
                                 ": landmarks must be [x,y,z] triples");
            f.landmarks.emplace_back(jp[0].get<double>(), jp[1].get<double>(),
                                     jp[2].get<double>());
        }
        if (!seq.frames.empty() &&
            f.landmark_count() != seq.frames.front().landmark_count())
            throw ParseError("frame " + std::to_string(index) + " has " +
                             std::to_string(f.landmark_count()) +
                             " landmarks, expected " +
                             std::to_string(seq.frames.front().landmark_count()));
        seq.frames.push_back(std::move(f));
        ++index;
    }
    seq.validate();
    return seq;
}

LandmarkSequence read_sequence_json_file(const std::string& path) {
    std::ifstream in = open_input(path);
    try {
        return read_sequence_json(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_sequence_json(std::ostream& out, const LandmarkSequence& seq) {
    json frames = json::array();
    for (const LandmarkFrame& frame : seq.frames) {
        json jframe = json::array();
        for (const Vec3& p : frame.landmarks)
            jframe.push_back(json::array({p.x(), p.y(), p.z()}));
        frames.push_back(std::move(jframe));
    }
    const json doc{{"frame_rate", seq.frame_rate}, {"frames", std::move(frames)}};
    out << doc.dump(2) << '\n';
}

void write_sequence_json_file(const std::string& path, const LandmarkSequence& seq) {
    std::ofstream out = open_output(path);
    write_sequence_json(out, seq);
}

LandmarkSequence read_sequence_file(const std::string& path, double frame_rate) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
        return read_sequence_csv_file(path, frame_rate);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return read_sequence_json_file(path);
    throw ParseError(path + ": unknown extension (expected .csv or .json)");
}

GroundTruth read_truth_json_file(const std::string& path) {
    std::ifstream in = open_input(path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": bad JSON: " + e.what());
    }
    if (!doc.contains("opening_frame") || !doc.contains("closing_frame"))
        throw ParseError(path + ": truth needs 'opening_frame' and 'closing_frame'");
    GroundTruth truth;
    truth.opening_frame = doc["opening_frame"].get<int>();
    truth.closing_frame = doc["closing_frame"].get<int>();
    if (truth.opening_frame >= truth.closing_frame)
        throw ParseError(path + ": opening_frame must precede closing_frame");
    if (doc.contains("labels") && !doc["labels"].is_null()) {
        std::vector<MotionState> labels;
        for (const json& jl : doc["labels"]) {
            const std::string text = jl.get<std::string>();
            if (text == "static")
                labels.push_back(MotionState::Static);
            else if (text == "opening")
                labels.push_back(MotionState::Opening);
            else if (text == "closing")
                labels.push_back(MotionState::Closing);
            else
                throw ParseError(path + ": unknown state label '" + text + "'");
        }
        truth.labels = std::move(labels);
    }
    return truth;
}

void write_truth_json_file(const std::string& path, const GroundTruth& truth) {
    json doc;
    doc["opening_frame"] = truth.opening_frame;
    doc["closing_frame"] = truth.closing_frame;
    if (truth.labels) {
        json labels = json::array();
        for (MotionState s : *truth.labels) labels.push_back(to_string(s));
        doc["labels"] = std::move(labels);
    } else {
        doc["labels"] = nullptr;
    }
    std::ofstream out = open_output(path);
    out << doc.dump(2) << '\n';
}

}  // namespace lipevent
