#pragma once

// Generated by oracles/failure_bound.py (50-digit mpmath).
struct FailureGridPoint {
  long N;
  long n;
  double q;
  double C_hat;
  double log_bound;
};

inline constexpr FailureGridPoint kFailureGrid[] = {
    {50, 2, 2.0, 4.0, 4.7059942889353564285},
    {5000, 2, 2.0, 2.0, -1420.8008117511712676},
    {10, 2, 2.0, 4.0, 3.9835015012296956934},
    {20, 3, 2.0, 3.0, 5.7296191157899677271},
    {40, 4, 2.0, 2.0, 1.7594839145620792461},
    {100, 5, 3.0, 2.0, 6.1444898232127223914},
    {160, 4, 2.0, 1.5, -73.91670751868923228},
    {640, 4, 3.0, 2.0, -61.57439178933618306},
    {1000, 10, 2.0, 2.0, -230.18410750881489686},
    {200, 20, 4.0, 1.3, -14.234913385631088485},
    {30, 3, 2.5, 2.5, 6.1215412194070904074},
    {500, 5, 5.0, 1.2, -227.45147371171034777},
    {60, 6, 2.0, 4.0, 14.936876987597410819},
    {80, 8, 2.0, 3.0, 16.302900434414467449},
    {10000, 10, 3.0, 2.0, -1256.2909754174101314},
    {120, 6, 6.0, 1.1, -72.044978867847441506},
    {12, 3, 2.0, 8.0, 5.9450395141990543294},
    {7, 2, 2.0, 2.0, 2.2992592560244636687},
    {2000, 50, 2.0, 1.5, -914.54110994825967366},
    {300, 30, 3.0, 1.7, 34.201663003974876212},
};
