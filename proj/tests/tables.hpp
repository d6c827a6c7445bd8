#pragma once

#include <utility>
#include <vector>

// published reference rules, half rules for the uniform cases
namespace ref {

// d=4 c=0 N=32 on [0,32], left half, last node at 16
inline const std::vector<std::pair<const char*, const char*>> table_4_0_n32 = {
    {"0.15505102572168219018", "0.37640306270046727505"},
    {"0.64494897427831780982", "0.51248582618842161384"},
    {"1.09618188083454161658", "0.44990832345215269846"},
    {"1.62381811916545838342", "0.54355572883542900089"},
    {"2.09406803063701196217", "0.45528750742625502979"},
    {"2.62317334867333286542", "0.54451443355215653685"},
    {"3.09400541223051380344", "0.45545148116758058646"},
    {"3.62315435108309566402", "0.54454268347129809054"},
    {"4.09400356857477400144", "0.45545631312314607882"},
    {"4.62315379183131736912", "0.54454351509548282068"},
    {"5.09400351430231989540", "0.45545645536699068802"},
    {"5.62315377536846916574", "0.54454353957623409006"},
    {"6.09400351270468775630", "0.45545645955426229179"},
    {"6.62315377488384815118", "0.54454354029688014082"},
    {"7.09400351265765785696", "0.45545645967752406246"},
    {"7.62315377486958224046", "0.54454354031809397989"},
    {"8.09400351265627342598", "0.45545645968115255021"},
    {"8.62315377486916229127", "0.54454354031871845700"},
    {"9.09400351265623267214", "0.45545645968125936291"},
    {"9.62315377486914992912", "0.54454354031873683989"},
    {"10.09400351265623147246", "0.45545645968126250719"},
    {"10.62315377486914956521", "0.54454354031873738103"},
    {"11.09400351265623143714", "0.45545645968126259975"},
    {"11.62315377486914955449", "0.54454354031873739696"},
    {"12.09400351265623143610", "0.45545645968126260247"},
    {"12.62315377486914955418", "0.54454354031873739743"},
    {"13.09400351265623143607", "0.45545645968126260255"},
    {"13.62315377486914955417", "0.54454354031873739745"},
    {"14.09400351265623143607", "0.45545645968126260255"},
    {"14.62315377486914955417", "0.54454354031873739745"},
    {"15.09400351265623143607", "0.45545645968126260255"},
    {"15.62315377486914955417", "0.54454354031873739745"},
    {"16", "0.23570226039551584147"},
};

// d=6 c=1 N=16 on [0,16], left half, last node at 8
inline const std::vector<std::pair<const char*, const char*>> table_6_1_n16 = {
    {"0.09260767873646902812", "0.23050486991521396993"},
    {"0.42847197760814208611", "0.40704416177654188371"},
    {"0.83018935543014295850", "0.36711516474717107854"},
    {"1.18644180845680657718", "0.38605131464693100757"},
    {"1.61390002454892326539", "0.43521953213902864887"},
    {"2.00010871499078850047", "0.34849458018527149253"},
    {"2.38693570464281488360", "0.43622300768518266759"},
    {"2.81587555220352588540", "0.38934738499907207358"},
    {"3.18412450505465915622", "0.38934744984465969166"},
    {"3.61306443926733132981", "0.43622309934864369784"},
    {"4.00000000036580449734", "0.34885887065223780524"},
    {"4.38693556354866909260", "0.43622310273429582360"},
    {"4.81587550281258499829", "0.38934746132575015954"},
    {"5.18412449718741500236", "0.38934746132575016027"},
    {"5.61306443645133090903", "0.43622310273429582463"},
    {"6", "0.34885887187990802983"},
    {"6.38693556354866909100", "0.43622310273429582467"},
    {"6.81587550281258499773", "0.38934746132575016040"},
    {"7.18412449718741500227", "0.38934746132575016040"},
    {"7.61306443645133090900", "0.43622310273429582467"},
    {"8", "0.34885887187990802984"},
};

// d=6 c=1 on (0,1/2,1,3/2,2,3,4,6,8)
inline const std::vector<std::pair<const char*, const char*>> table_6_1_nonuniform = {
    {"0.04630383936823451406", "0.11525243495760698496"},
    {"0.21423598880407104306", "0.20352208088827094186"},
    {"0.41509467771507147925", "0.18355758237358553927"},
    {"0.59322090422840328859", "0.19302565732346550379"},
    {"0.80695001227446163269", "0.21760976606951432444"},
    {"1.00005435749539425024", "0.17424729009263574626"},
    {"1.19346785232140744180", "0.21811150384259133380"},
    {"1.40793777610176294270", "0.19467369249953603679"},
    {"1.59206225252732957811", "0.19467372492232984583"},
    {"1.80653221963366566491", "0.21811154967432184892"},
    {"2.03366386534871873978", "0.27364402258520424593"},
    {"2.39575347568220124424", "0.42990626936051039389"},
    {"2.81890006050280681835", "0.38464672961950394215"},
    {"3.18460630101439855425", "0.38864808057905118797"},
    {"3.61323715670019192625", "0.43601548697564552637"},
    {"4.06704953147532718337", "0.54635960217072361337"},
    {"4.78975598662033980891", "0.85789420372567177811"},
    {"5.63316509361482355771", "0.76272937432250973703"},
    {"6.34055900169025774853", "0.73283097829499297885"},
    {"7.14341666786039006430", "0.81371802826546978692"},
    {"7.81485959249475117486", "0.46082194145685870291"},
};

// sixtic block, printed t1 t2 t3 w1 w2 w3
inline const char* block61[6] = {"0.21132486540518711775", "0.42759570120004222829",
                                 "0.82792440129801198117", "0.23004836288935413032",
                                 "0.40614522687566702979", "0.36380641023497883991"};

// periodic constants d1 d2 w1 w2 w3 as printed
inline const char* asym40[5] = {"0.62315377486914955417", "0.09400351265623143607",
                                "0.54454354031873739745", "0.45545645968126260255",
                                "0.23570226039551584147"};
inline const char* asym61[5] = {"0.38693556354866909100", "0.81587550281258499773",
                                "0.43622310273429582467", "0.38934746132575016040",
                                "0.34885887187990802985"};

}  // namespace ref
