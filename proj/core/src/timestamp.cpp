#include "ehrxqa/timestamp.hpp"

#include <cstdio>

namespace ehrxqa {
namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t pos_mod(std::int64_t a, std::int64_t b) {
    std::int64_t r = a % b;
    return r < 0 ? r + b : r;
}

bool parse_int(const std::string& s, size_t pos, size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (size_t i = 0; i < len; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

}  // namespace

int days_in_month(int year, int month) {
    static const int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return lengths[month - 1];
}

Timestamp Timestamp::from_civil(int year, int month, int day, int hour, int minute, int second) {
    std::int64_t days = days_from_civil(year, month, day);
    return Timestamp(days * 86400 + hour * 3600 + minute * 60 + second);
}

std::optional<Timestamp> Timestamp::parse(const std::string& text) {
    int y, mo, d;
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    if (!parse_int(text, 0, 4, y) || !parse_int(text, 5, 2, mo) || !parse_int(text, 8, 2, d))
        return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo)) return std::nullopt;
    int h = 0, mi = 0, s = 0;
    if (text.size() > 10) {
        if (text[10] != ' ' && text[10] != 'T') return std::nullopt;
        if (text.size() != 16 && text.size() != 19) return std::nullopt;
        if (!parse_int(text, 11, 2, h) || text[13] != ':' || !parse_int(text, 14, 2, mi))
            return std::nullopt;
        if (text.size() == 19) {
            if (text[16] != ':' || !parse_int(text, 17, 2, s)) return std::nullopt;
        }
        if (h > 23 || mi > 59 || s > 59) return std::nullopt;
    }
    return Timestamp::from_civil(y, mo, d, h, mi, s);
}

int Timestamp::year() const {
    int y, m, d;
    civil_from_days(floor_div(seconds_, 86400), y, m, d);
    return y;
}

int Timestamp::month() const {
    int y, m, d;
    civil_from_days(floor_div(seconds_, 86400), y, m, d);
    return m;
}

int Timestamp::day() const {
    int y, m, d;
    civil_from_days(floor_div(seconds_, 86400), y, m, d);
    return d;
}

int Timestamp::hour() const { return static_cast<int>(pos_mod(seconds_, 86400) / 3600); }
int Timestamp::minute() const { return static_cast<int>(pos_mod(seconds_, 3600) / 60); }
int Timestamp::second() const { return static_cast<int>(pos_mod(seconds_, 60)); }

std::string Timestamp::to_string() const {
    int y, m, d;
    civil_from_days(floor_div(seconds_, 86400), y, m, d);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", y, m, d, hour(), minute(),
                  second());
    return buf;
}

std::string Timestamp::date_string() const {
    int y, m, d;
    civil_from_days(floor_div(seconds_, 86400), y, m, d);
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

Timestamp Timestamp::add_months(int months) const {
    int y, m, d;
    civil_from_days(floor_div(seconds_, 86400), y, m, d);
    std::int64_t linear = static_cast<std::int64_t>(y) * 12 + (m - 1) + months;
    int ny = static_cast<int>(floor_div(linear, 12));
    int nm = static_cast<int>(pos_mod(linear, 12)) + 1;
    int nd = d;
    if (nd > days_in_month(ny, nm)) nd = days_in_month(ny, nm);
    std::int64_t tod = pos_mod(seconds_, 86400);
    return Timestamp(days_from_civil(ny, nm, nd) * 86400 + tod);
}

Timestamp Timestamp::start_of_day() const { return Timestamp(floor_div(seconds_, 86400) * 86400); }

Timestamp Timestamp::start_of_month() const {
    int y, m, d;
    civil_from_days(floor_div(seconds_, 86400), y, m, d);
    return Timestamp::from_civil(y, m, 1);
}

Timestamp Timestamp::start_of_year() const {
    return Timestamp::from_civil(year(), 1, 1);
}

}  // namespace ehrxqa
