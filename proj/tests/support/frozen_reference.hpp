#pragma once
// Generated by derive_reference.py (mpmath, 50 digits). Do not edit.

#include <array>
#include <vector>

namespace oqf::test {

struct FrozenCoefficients {
  int m;
  double omega, a, b;
  int n;
  std::vector<double> re, im;
};

inline const std::vector<FrozenCoefficients>& frozen_coefficients() {
  static const std::vector<FrozenCoefficients> cases = {
      {1, 2.7, 0.0, 1.0, 8,
       {0.042321359854809414, -0.044225699561930204, -0.038426990620284221, 0.084381794452833683, -0.049751742359239431, -0.032391366503193117, 0.083600627373452779, -0.054971049120770783, -0.04659817267424532},
       {0.035245174897312666, 0.072169782444586758, -0.075417215486317746, 0.0066409912483621674, 0.068477398695196923, -0.078199676315806543, 0.013241038577324497, 0.064362829011805428, -0.029358647055401758}},
      {2, 2.7, 0.0, 1.0, 8,
       {0.044974409806168736, -0.044053560962873745, -0.057315701641606397, 0.11719324770416963, -0.068626669504710275, -0.04482046329708566, 0.11630724160786997, -0.080751648559060599, -0.038968094311438856},
       {0.02636040754655752, 0.099221177650851394, -0.10366967058926188, 0.0090486295851568942, 0.09445650716843354, -0.1086612215772252, 0.022474781518944133, 0.072558456315755582, -0.034627391602149588}},
      {3, 2.7, 0.0, 1.0, 8,
       {0.03977177139073506, -0.029427565165963787, -0.074440023256879706, 0.12987609432751954, -0.073595932018375582, -0.050561255512348677, 0.13211972714820644, -0.096706359619293261, -0.033097696452167216},
       {0.021878345649836553, 0.11124467951788677, -0.11473187242881032, 0.010963949064479693, 0.10129611025031759, -0.12013145923476601, 0.035342570814657505, 0.062363774114611671, -0.031064421731151079}},
      {2, 0.01, 0.0, 1.0, 8,
       {0.04929121184583575, 0.14174874511827001, 0.12047430591589135, 0.12625379593788053, 0.1242946245435483, 0.12618991937417084, 0.12035977049213194, 0.14153070284573482, 0.049199080166377772},
       {8.1752271711307221e-05, 0.00098209884226375162, 0.0019619697392471158, 0.0029503890718860521, 0.003906115938663992, 0.0049829742864824726, 0.0056065460182561826, 0.0079203164540667115, 0.0030134298477518572}},
      {3, 0.001, 0.0, 1.0, 16,
       {0.022252286816676847, 0.076985418405469672, 0.054579677479429503, 0.065983396460046972, 0.060995467382846474, 0.063151154990300232, 0.062211595643248012, 0.062641988930000614, 0.062396370400052546, 0.062641832814708934, 0.062211292457637783, 0.063150679833502893, 0.060994879757044526, 0.065982557602226544, 0.054578906470077335, 0.076984055366384349, 0.022251859467067266},
       {1.8926004618916934e-06, 2.4921785142183521e-05, 4.875692094106024e-05, 7.3784388421162703e-05, 9.8099376217078795e-05, 0.00012277180665507724, 0.0001471903287877814, 0.00017194957581513737, 0.00019602462375506015, 0.00022164245305842075, 0.00024369698837696104, 0.00027401841515065957, 0.00028514586299360089, 0.00034080024731452318, 0.00029417601267584778, 0.0004587891738828765, 0.00013792175852851124}},
      {2, 8.0, 0.0, 1.0, 8,
       {0.0040149824703632556, -0.0050921728892412022, 0.0013709696240264775, -0.0003917056068647079, 0.00019585280343235395, -0.0003917056068647079, 0.0013709696240264775, -0.0050921728892412022, 0.0040149824703632556},
       {0.019894367886486918, 6.779791342250467e-52, -4.1288572713025482e-52, 5.8345398153314932e-53, 5.1009209902549989e-54, -6.298384456176818e-53, 4.0784864787593498e-52, -6.7080516427318398e-52, -0.019894367886486918}},
      {3, 16.0, 0.0, 1.0, 8,
       {0.0013696235440904625, -0.002213895843506074, 0.0012423623451442605, -0.00062578951682366402, 0.0004553989421900304, -0.00062578951682366402, 0.0012423623451442605, -0.002213895843506074, 0.0013696235440904625},
       {0.0098535596954253089, 0.0002303560629770303, -0.00019564203639254755, 7.4712875126603168e-05, -1.9030945975669766e-52, -7.4712875126603168e-05, 0.00019564203639254755, -0.0002303560629770303, -0.0098535596954253089}},
      {2, 3.3, -1.0, 2.0, 10,
       {0.042830688886732284, 0.003851773846339863, -0.0010330094791413027, 0.00028025609706500468, -8.8023930457625099e-05, 7.1829590851124096e-05, -0.00019930543983742938, 0.00072538023207101732, -0.0027022283073036076, 0.010083519346447226, -0.036300754373291451},
       {-0.024252337512344901, 0.011853956868275593, -0.003176936112565362, 0.00085377063815764295, -0.0002381628498197675, 9.8864950202328706e-05, -0.00015731210067471211, 0.00053036902383417459, -0.0019641776453581733, 0.0073263287387415506, 0.033240021318505585}},
      {4, 5.1, 0.0, 1.0, 12,
       {0.021371860601257835, -0.036443574408575818, 0.019798785197121745, 0.004417982436004728, -0.033426605432259324, 0.060658980208389342, -0.078672061872581439, 0.083184054469805271, -0.074186467370053119, 0.055775846719903016, -0.031452270006529517, 0.00013415350710270496, 0.027182243083525095},
       {0.01682935156524307, 0.05038851251183029, -0.080760487803732864, 0.088810707047734111, -0.080205781494550751, 0.058031242680434171, -0.025562102445655478, -0.011293807547575942, 0.045240174568933894, -0.069252546363301179, 0.076974041059405321, -0.06218615852152963, -0.0010531669451224242}},
      {3, 0.2, 0.0, 1.0, 8,
       {0.044473283207186388, 0.15252024191774086, 0.10285780034319161, 0.11876077549440076, 0.097151050082540741, 0.091930582153278012, 0.067811256435713133, 0.066163702059269344, 0.015158036947336103},
       {0.0014878575735728418, 0.020011802657795626, 0.03788044927759171, 0.058073819288379382, 0.070584369525344581, 0.095002412325846788, 0.086117878686844229, 0.13887138283344411, 0.041836832519790958}},
  };
  return cases;
}

struct FrozenErrorNorm {
  int m, n;
  double norm_sq;
};

inline constexpr std::array<FrozenErrorNorm, 9> frozen_error_norms = {{
    {1, 8, 0.0013020833333333333},
    {1, 16, 0.00032552083333333332},
    {1, 32, 8.1380208333333329e-05},
    {2, 8, 4.6143417096219931e-07},
    {2, 16, 2.5016402326519901e-08},
    {2, 32, 1.4440364037101522e-09},
    {3, 8, 5.2212104173717972e-10},
    {3, 16, 5.0775087349240823e-12},
    {3, 32, 5.5067008751578589e-14},
}};

} // namespace oqf::test
